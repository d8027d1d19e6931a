#include "shc/polytope.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <numeric>

namespace shc::polytope {

using exactq::Integer;
using exactq::Matrix;
using exactq::operator-;

namespace {

using IntegerVector = std::vector<Integer>;
using Bits = boost::dynamic_bitset<>;

IntegerVector primitive_integer(const Vector& v)
{
    Integer lcm = 1;
    for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    IntegerVector out(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = v[i].get_num() * (lcm / v[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

void make_primitive(IntegerVector& v)
{
    Integer g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v) x /= g;
}

Integer dot(const IntegerVector& a, const IntegerVector& b)
{
    Integer acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) acc += a[i] * b[i];
    return acc;
}

struct Ray {
    IntegerVector coords;
    Bits tight;  // generator indices with zero product, among those processed
};

}  // namespace

PointConfiguration PointConfiguration::from_points(std::vector<Vector> points)
{
    PointConfiguration c;
    c.ambient_dim = points.empty() ? 0 : points.front().size();
    for (const auto& p : points)
        if (p.size() != c.ambient_dim) throw std::invalid_argument("points of mixed dimension");
    c.points = std::move(points);
    return c;
}

std::size_t PointConfiguration::affine_dimension() const
{
    return exactq::affine_dim(points);
}

PointConfiguration PointConfiguration::restricted_to_span() const
{
    if (points.empty()) throw std::invalid_argument("empty configuration");
    std::vector<Vector> basis;
    for (std::size_t i = 1; i < points.size(); ++i) {
        basis.push_back(points[i] - points[0]);
        if (exactq::rank(Matrix::from_rows(basis)) < basis.size()) basis.pop_back();
    }
    const Matrix columns = Matrix::from_columns(basis);
    PointConfiguration out;
    out.ambient_dim = basis.size();
    for (const auto& p : points) {
        auto coords = exactq::solve(columns, p - points[0]);
        if (!coords) throw std::logic_error("point outside its own affine span");
        out.points.push_back(std::move(*coords));
    }
    return out;
}

PointConfiguration PointConfiguration::subconfiguration(std::span<const Label> labels) const
{
    PointConfiguration out;
    out.ambient_dim = ambient_dim;
    for (auto l : labels) out.points.push_back(points.at(l));
    return out;
}

std::vector<HullFacet> cone_facets(std::span<const Vector> generators)
{
    if (generators.empty()) throw DegenerateConfiguration("cone with no generators");
    const std::size_t dim = generators.front().size();
    const std::size_t count = generators.size();
    std::vector<IntegerVector> gens;
    gens.reserve(count);
    for (const auto& g : generators) {
        if (g.size() != dim) throw std::invalid_argument("generators of mixed dimension");
        gens.push_back(primitive_integer(g));
    }

    // Initial simplicial cone on the first spanning subset.
    std::vector<std::size_t> basis;
    std::vector<Vector> basis_rows;
    for (std::size_t i = 0; i < count && basis.size() < dim; ++i) {
        basis_rows.push_back(generators[i]);
        if (exactq::rank(Matrix::from_rows(basis_rows)) == basis_rows.size())
            basis.push_back(i);
        else
            basis_rows.pop_back();
    }
    if (basis.size() < dim) throw DegenerateConfiguration("generators do not span");

    const Matrix b = Matrix::from_rows(basis_rows);
    std::vector<Ray> rays;
    for (std::size_t k = 0; k < dim; ++k) {
        Vector unit(dim);
        unit[k] = 1;
        auto column = exactq::solve(b, unit);
        Ray r{primitive_integer(*column), Bits(count)};
        for (std::size_t j = 0; j < dim; ++j)
            if (j != k) r.tight.set(basis[j]);
        rays.push_back(std::move(r));
    }

    std::vector<bool> processed(count, false);
    for (auto i : basis) processed[i] = true;

    for (std::size_t i = 0; i < count; ++i) {
        if (processed[i]) continue;
        std::vector<Integer> value(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            value[r] = dot(gens[i], rays[r].coords);
            if (sgn(value[r]) > 0)
                pos.push_back(r);
            else if (sgn(value[r]) < 0)
                neg.push_back(r);
            else
                rays[r].tight.set(i);
        }
        processed[i] = true;
        if (neg.empty()) continue;

        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (sgn(value[r]) >= 0) next.push_back(rays[r]);

        for (auto p : pos) {
            for (auto q : neg) {
                Bits common = rays[p].tight & rays[q].tight;
                if (common.count() + 2 < dim) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    if (common.is_subset_of(rays[r].tight)) adjacent = false;
                }
                if (!adjacent) continue;
                IntegerVector coords(dim);
                for (std::size_t c = 0; c < dim; ++c)
                    coords[c] = value[p] * rays[q].coords[c] - value[q] * rays[p].coords[c];
                make_primitive(coords);
                common.set(i);
                next.push_back(Ray{std::move(coords), std::move(common)});
            }
        }
        rays = std::move(next);
    }

    std::vector<HullFacet> facets;
    facets.reserve(rays.size());
    for (const auto& r : rays) {
        HullFacet f;
        for (std::size_t g = 0; g < count; ++g)
            if (r.tight.test(g)) f.vertices.push_back(g);
        for (const auto& x : r.coords) f.functional.emplace_back(x);
        facets.push_back(std::move(f));
    }
    std::sort(facets.begin(), facets.end(),
              [](const HullFacet& a, const HullFacet& b) { return a.vertices < b.vertices; });
    return facets;
}

namespace {

std::vector<Vector> homogenized(const PointConfiguration& config)
{
    std::vector<Vector> rows;
    rows.reserve(config.size());
    for (const auto& p : config.points) {
        Vector h;
        h.reserve(p.size() + 1);
        h.emplace_back(1);
        h.insert(h.end(), p.begin(), p.end());
        rows.push_back(std::move(h));
    }
    return rows;
}

}  // namespace

std::vector<HullFacet> convex_hull_facets(const PointConfiguration& config)
{
    if (!config.full_dimensional()) throw DegenerateConfiguration("configuration is not full-dimensional");
    return cone_facets(homogenized(config));
}

Circuit affine_dependence(const PointConfiguration& config, std::span<const Label> labels)
{
    Matrix m(config.ambient_dim + 1, labels.size());
    for (std::size_t j = 0; j < labels.size(); ++j) {
        const auto& p = config.points.at(labels[j]);
        m(0, j) = 1;
        for (std::size_t r = 0; r < p.size(); ++r) m(r + 1, j) = p[r];
    }
    const auto kernel = exactq::nullspace(m);
    if (kernel.empty()) throw std::invalid_argument("points are affinely independent");
    if (kernel.size() > 1) throw std::invalid_argument("points carry more than one affine dependence");
    const auto primitive = exactq::primitive_normalize(kernel.front());

    std::vector<std::pair<Label, std::int64_t>> support;
    for (std::size_t j = 0; j < labels.size(); ++j)
        if (primitive[j] != 0) support.emplace_back(labels[j], primitive[j]);
    std::sort(support.begin(), support.end());
    const std::int64_t lead = support.front().second > 0 ? 1 : -1;

    Circuit c;
    for (auto [label, coeff] : support) {
        c.labels.push_back(label);
        c.dependence.emplace_back(static_cast<long>(lead * coeff));
        (lead * coeff > 0 ? c.positive : c.negative).push_back(label);
    }
    return c;
}

Circuit Circuit::reversed() const
{
    Circuit c = *this;
    std::swap(c.positive, c.negative);
    for (auto& x : c.dependence) x = -x;
    return c;
}

int orientation(const PointConfiguration& config, std::span<const Label> tuple)
{
    const std::size_t d = config.ambient_dim;
    if (tuple.size() != d + 1) throw std::invalid_argument("orientation needs ambient_dim + 1 points");
    Matrix m(d + 1, d + 1);
    for (std::size_t r = 0; r <= d; ++r) {
        const auto& p = config.points.at(tuple[r]);
        m(r, 0) = 1;
        for (std::size_t c = 0; c < d; ++c) m(r, c + 1) = p[c];
    }
    return sgn(exactq::det(m));
}

Rational normalized_volume(const PointConfiguration& config, const Simplex& simplex)
{
    const std::size_t d = config.ambient_dim;
    if (simplex.size() != d + 1) throw std::invalid_argument("simplex size does not match dimension");
    Matrix m(d + 1, d + 1);
    for (std::size_t r = 0; r <= d; ++r) {
        const auto& p = config.points.at(simplex[r]);
        m(r, 0) = 1;
        for (std::size_t c = 0; c < d; ++c) m(r, c + 1) = p[c];
    }
    return abs(exactq::det(m));
}

OrientedSum oriented_sum(const PointConfiguration& config, const Triangulation& triangulation)
{
    OrientedSum sum;
    for (const auto& s : triangulation) sum.add(s, orientation(config, s));
    return sum;
}

}  // namespace shc::polytope
