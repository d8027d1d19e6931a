#include "shc/voronoi.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

namespace shc::voronoi {

using exactq::Integer;

std::size_t sym_dim(std::size_t n) { return n * (n + 1) / 2; }

std::size_t rank_of_sym_dim(std::size_t d)
{
    for (std::size_t n = 1; sym_dim(n) <= d; ++n)
        if (sym_dim(n) == d) return n;
    throw std::invalid_argument("not the dimension of a space of symmetric matrices");
}

Vector rank1(const IntVector& v)
{
    if (std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; }))
        throw std::invalid_argument("rank1 of the zero vector");
    Vector out;
    out.reserve(sym_dim(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i; j < v.size(); ++j) out.emplace_back(exactq::checked_mul(v[i], v[j]));
    return out;
}

Rational trace(const Vector& y, std::size_t n)
{
    Rational t = 0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < n; ++i) {
        t += y.at(at);
        at += n - i;
    }
    return t;
}

Vector normalize_to_section(const Vector& y, std::size_t n)
{
    const Rational t = trace(y, n);
    if (sgn(t) <= 0) throw std::invalid_argument("point does not meet the trace section");
    Vector out = y;
    for (auto& x : out) x /= t;
    return out;
}

Rational evaluate(const Matrix& gram, const IntVector& v)
{
    Rational q = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[i] != 0 && v[j] != 0) q += gram(i, j) * Rational(static_cast<long>(v[i])) * Rational(static_cast<long>(v[j]));
    return q;
}

namespace {

IntVector sign_normalized(IntVector v)
{
    for (auto x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

Integer floor_of(const Rational& q)
{
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

}  // namespace

MinimalVectors minimal_vectors(const Matrix& gram)
{
    const std::size_t n = gram.rows();
    if (!gram.is_square() || n == 0) throw std::invalid_argument("Gram matrix must be square");
    if (gram.transpose() != gram) throw std::invalid_argument("Gram matrix must be symmetric");

    // Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2
    Matrix q = gram;
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(q(i, i)) <= 0) throw NotPositiveDefinite("form is not positive definite");
        for (std::size_t j = i + 1; j < n; ++j) {
            q(j, i) = q(i, j);
            q(i, j) /= q(i, i);
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
    }

    Rational bound = gram(0, 0);
    for (std::size_t i = 1; i < n; ++i) bound = std::min(bound, gram(i, i));

    std::vector<std::pair<Rational, IntVector>> found;
    IntVector x(n, 0);
    std::function<void(std::size_t, const Rational&)> descend = [&](std::size_t level, const Rational& used) {
        const std::size_t i = level - 1;
        Rational centre = 0;
        for (std::size_t j = i + 1; j < n; ++j) centre -= q(i, j) * Rational(static_cast<long>(x[j]));
        auto visit = [&](const Integer& xi) {
            const Rational offset = Rational(xi) - centre;
            const Rational total = used + q(i, i) * offset * offset;
            if (total > bound) return false;
            x[i] = exactq::to_int64(xi);
            if (i == 0) {
                if (sgn(total) > 0) found.emplace_back(total, x);
            } else {
                descend(i, total);
            }
            return true;
        };
        const Integer start = floor_of(centre + Rational(1, 2));
        for (Integer xi = start; visit(xi); ++xi) {
        }
        for (Integer xi = start - 1; visit(xi); --xi) {
        }
        x[i] = 0;
    };
    descend(n, 0);

    MinimalVectors out;
    out.min_value = bound;
    for (const auto& [value, v] : found) out.min_value = std::min(out.min_value, value);
    std::set<IntVector> lines;
    for (const auto& [value, v] : found)
        if (value == out.min_value) lines.insert(sign_normalized(v));
    out.vectors.assign(lines.begin(), lines.end());
    return out;
}

PerfectForm form_from_minvecs(std::vector<IntVector> vectors, std::string name)
{
    if (vectors.empty()) throw std::invalid_argument("no vectors");
    const std::size_t n = vectors.front().size();
    const std::size_t d = sym_dim(n);
    std::vector<Vector> rows;
    for (const auto& v : vectors) {
        if (v.size() != n) throw std::invalid_argument("vectors of mixed length");
        Vector row = rank1(v);
        // off-diagonal Gram entries appear twice in v^t G v
        std::size_t at = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j, ++at)
                if (j != i) row[at] *= 2;
        rows.push_back(std::move(row));
    }
    const Matrix system = Matrix::from_rows(rows);
    if (exactq::rank(system) < d) throw std::invalid_argument("rank-one forms do not span Y");
    auto solution = exactq::solve(system, Vector(vectors.size(), Rational(2)));
    if (!solution) throw std::invalid_argument("no form takes equal values on the vectors");

    PerfectForm form;
    form.name = std::move(name);
    form.n = n;
    form.gram = Matrix(n, n);
    std::size_t at = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j, ++at) form.gram(i, j) = form.gram(j, i) = (*solution)[at];

    auto minimal = minimal_vectors(form.gram);
    std::set<IntVector> expected;
    for (const auto& v : vectors) expected.insert(sign_normalized(v));
    if (expected.size() != vectors.size()) throw std::invalid_argument("vectors repeat a line");
    if (minimal.min_value != 2 || std::set<IntVector>(minimal.vectors.begin(), minimal.vectors.end()) != expected)
        throw std::invalid_argument("form has minimal vectors outside the given set");
    form.min_value = minimal.min_value;
    form.minimal_vectors = std::move(vectors);
    return form;
}

polytope::PointConfiguration Tile::section_configuration() const
{
    return polytope::PointConfiguration::from_points(section_points).restricted_to_span();
}

Tile tile_of(const PerfectForm& form)
{
    Tile tile;
    tile.form = form;
    for (const auto& v : form.minimal_vectors) {
        tile.rays.push_back(rank1(v));
        tile.section_points.push_back(normalize_to_section(tile.rays.back(), form.n));
    }
    if (exactq::rank(Matrix::from_rows(tile.rays)) != sym_dim(form.n))
        throw std::invalid_argument("form is not perfect");
    return tile;
}

std::vector<std::vector<Label>> tile_facets(const Tile& tile)
{
    std::vector<std::vector<Label>> out;
    for (auto& f : polytope::convex_hull_facets(tile.section_configuration())) out.push_back(std::move(f.vertices));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

using Mask = std::uint64_t;

std::vector<Label> labels_of(Mask m)
{
    std::vector<Label> out;
    for (Label l = 0; m != 0; ++l, m >>= 1)
        if (m & 1) out.push_back(l);
    return out;
}

Mask mask_of(std::span<const Label> labels)
{
    Mask m = 0;
    for (auto l : labels) {
        if (l >= 64) throw std::out_of_range("label beyond the face lattice width");
        m |= Mask{1} << l;
    }
    return m;
}

}  // namespace

FaceLattice face_lattice(const Tile& tile)
{
    if (tile.size() > 64) throw std::invalid_argument("face lattice supports at most 64 vertices");
    std::vector<Mask> facets;
    for (const auto& f : tile_facets(tile)) facets.push_back(mask_of(f));

    const Mask top = tile.size() == 64 ? ~Mask{0} : (Mask{1} << tile.size()) - 1;
    std::set<Mask> seen{top};
    std::vector<Mask> work{top};
    while (!work.empty()) {
        const Mask face = work.back();
        work.pop_back();
        for (auto f : facets) {
            const Mask g = face & f;
            if (g != 0 && seen.insert(g).second) work.push_back(g);
        }
    }

    FaceLattice lattice;
    lattice.vertex_count = tile.size();
    lattice.top_dim = sym_dim(tile.form.n) - 1;
    for (auto m : seen) {
        Face face;
        face.vertices = labels_of(m);
        std::vector<Vector> pts;
        for (auto l : face.vertices) pts.push_back(tile.section_points[l]);
        face.dim = exactq::affine_dim(pts);
        lattice.faces.push_back(std::move(face));
    }
    std::sort(lattice.faces.begin(), lattice.faces.end(), [](const Face& a, const Face& b) {
        return std::tie(a.dim, a.vertices) < std::tie(b.dim, b.vertices);
    });
    return lattice;
}

bool FaceLattice::contains(std::size_t outer, std::size_t inner) const
{
    const auto& a = faces.at(outer).vertices;
    const auto& b = faces.at(inner).vertices;
    return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<std::size_t> FaceLattice::of_dimension(std::size_t dim) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i].dim == dim) out.push_back(i);
    return out;
}

std::size_t FaceLattice::index_of(const std::vector<Label>& vertices) const
{
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i].vertices == vertices) return i;
    return npos;
}

const Face& minimal_face(const FaceLattice& lattice, std::span<const Label> s)
{
    std::vector<Label> wanted(s.begin(), s.end());
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    if (wanted.empty()) throw std::invalid_argument("minimal face of the empty set");
    if (wanted.back() >= lattice.vertex_count)
        throw std::invalid_argument("labels outside the tile");
    // faces are sorted by dimension, so the first face containing S is the
    // intersection of all of them (the lattice is closed under intersection)
    for (const auto& f : lattice.faces)
        if (std::includes(f.vertices.begin(), f.vertices.end(), wanted.begin(), wanted.end())) return f;
    throw std::invalid_argument("labels not contained in any face");
}

}  // namespace shc::voronoi
