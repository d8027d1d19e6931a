#include "shc/sharbly.hpp"

#include "shc/antisym.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace shc::sharbly {

using exactq::Integer;
using exactq::Matrix;
using exactq::operator*;

namespace {

std::optional<Signed> canonical_from_primitive(std::size_t n, std::vector<IntVector> vectors)
{
    std::vector<Vector> rows;
    for (const auto& v : vectors) {
        if (v.size() != n) throw std::invalid_argument("vector length differs from n");
        rows.push_back(exactq::to_vector(v));
    }
    if (vectors.size() < n || exactq::rank(Matrix::from_rows(rows)) < n) return std::nullopt;
    const int sign = sort_with_sign(vectors, std::greater<IntVector>{});
    if (sign == 0) return std::nullopt;
    return Signed{sign, BasicSharbly{n, std::move(vectors)}};
}

Integer abs_det(const std::vector<const IntVector*>& columns)
{
    const std::size_t n = columns.size();
    Matrix m(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) m(r, c) = static_cast<long>((*columns[c])[r]);
    const Rational d = exactq::det(m);
    return abs(d.get_num());
}

void for_each_subset(std::size_t m, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f)
{
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
        if (pos == k) {
            f(idx);
            return;
        }
        for (std::size_t i = from; i + (k - pos) <= m; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
}

/// Per-vector multiset of |det| over the n-subsets containing it.
std::vector<std::vector<Integer>> signatures(const BasicSharbly& a)
{
    const std::size_t m = a.vectors.size();
    std::vector<std::vector<Integer>> sig(m);
    for_each_subset(m, a.n, [&](const std::vector<std::size_t>& idx) {
        std::vector<const IntVector*> cols;
        for (auto i : idx) cols.push_back(&a.vectors[i]);
        const Integer d = abs_det(cols);
        for (auto i : idx) sig[i].push_back(d);
    });
    for (auto& s : sig) std::sort(s.begin(), s.end());
    return sig;
}

int permutation_sign(std::vector<std::size_t> p)
{
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        while (p[i] != i) {
            std::swap(p[i], p[p[i]]);
            sign = -sign;
        }
    return sign;
}

}  // namespace

void for_each_equivalence(const BasicSharbly& a, const BasicSharbly& b, const Budget& budget,
                          const std::function<bool(const GroupElement&, int)>& visit)
{
    if (a.n != b.n || a.vectors.size() != b.vectors.size()) return;
    const std::size_t n = a.n;
    const std::size_t m = a.vectors.size();
    const auto sig_a = signatures(a);
    const auto sig_b = signatures(b);
    {
        auto sa = sig_a, sb = sig_b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return;
    }

    // basis of a, preferring vectors with few candidate images
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    auto candidates_of = [&](std::size_t i) {
        return std::count(sig_b.begin(), sig_b.end(), sig_a[i]);
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return candidates_of(x) < candidates_of(y); });
    std::vector<std::size_t> basis;
    std::vector<Vector> rows;
    for (auto i : order) {
        if (basis.size() == n) break;
        rows.push_back(exactq::to_vector(a.vectors[i]));
        if (exactq::rank(Matrix::from_rows(rows)) == rows.size())
            basis.push_back(i);
        else
            rows.pop_back();
    }
    const Matrix bmat = Matrix::from_columns(rows);
    const Rational bdet = exactq::det(bmat);
    const Matrix btrans = bmat.transpose();

    NodeCounter counter(budget.max_nodes, "sharbly equivalence search");
    std::vector<std::size_t> image(n);
    std::vector<int> signs(n);
    std::vector<bool> taken(m, false);
    bool stop = false;

    std::function<void(std::size_t)> extend = [&](std::size_t k) {
        if (stop) return;
        counter.tick();
        if (k == n) {
            std::vector<Vector> cols;
            for (std::size_t i = 0; i < n; ++i)
                cols.push_back(Rational(signs[i]) * exactq::to_vector(b.vectors[image[i]]));
            const Matrix w = Matrix::from_columns(cols);
            if (exactq::det(w) != bdet) return;
            // g B = W, so B^t g^t = W^t
            std::vector<Vector> grows;
            for (std::size_t r = 0; r < n; ++r) grows.push_back(*exactq::solve(btrans, w.row(r)));
            const Matrix g = Matrix::from_rows(grows);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    if (g(r, c).get_den() != 1) return;
            const GroupElement e = GroupElement::from_matrix(g);
            std::vector<std::size_t> perm(m);
            std::vector<bool> used(m, false);
            for (std::size_t i = 0; i < m; ++i) {
                const auto j = voronoi::find_line(b.vectors, e.apply(a.vectors[i]));
                if (j == voronoi::npos || used[j]) return;
                used[j] = true;
                perm[i] = j;
            }
            stop = visit(e, permutation_sign(perm));
            return;
        }
        const std::size_t src = basis[k];
        for (std::size_t j = 0; j < m && !stop; ++j) {
            if (taken[j] || sig_b[j] != sig_a[src]) continue;
            taken[j] = true;
            image[k] = j;
            for (int s : {1, -1}) {
                signs[k] = s;
                extend(k + 1);
                if (stop) break;
            }
            taken[j] = false;
        }
    };
    extend(0);
}

std::optional<Signed> canonicalize(std::size_t n, const std::vector<IntVector>& vectors)
{
    std::vector<IntVector> normalized;
    normalized.reserve(vectors.size());
    for (const auto& v : vectors) normalized.push_back(exactq::primitive_normalize(v));
    return canonical_from_primitive(n, std::move(normalized));
}

std::optional<Signed> canonicalize(std::size_t n, const std::vector<Vector>& vectors)
{
    std::vector<IntVector> normalized;
    normalized.reserve(vectors.size());
    for (const auto& v : vectors) normalized.push_back(exactq::primitive_normalize(v));
    return canonical_from_primitive(n, std::move(normalized));
}

void SharblyChain::add(const std::vector<IntVector>& vectors, const Rational& coeff)
{
    if (vectors.size() != n_ + degree_) throw std::invalid_argument("basic sharbly of the wrong degree");
    if (sgn(coeff) == 0) return;
    if (auto c = canonicalize(n_, vectors)) add(c->basic, c->sign * coeff);
}

void SharblyChain::add(const BasicSharbly& basic, const Rational& coeff)
{
    if (basic.n != n_ || basic.vectors.size() != n_ + degree_)
        throw std::invalid_argument("basic sharbly does not match the chain");
    if (sgn(coeff) == 0) return;
    auto [it, inserted] = terms_.try_emplace(basic, 0);
    it->second += coeff;
    if (sgn(it->second) == 0) terms_.erase(it);
}

void SharblyChain::add(const SharblyChain& other, const Rational& scale)
{
    if (other.empty()) return;
    if (other.n_ != n_ || other.degree_ != degree_) throw std::invalid_argument("chains of different shape");
    for (const auto& [b, c] : other.terms_) add(b, scale * c);
}

SharblyChain SharblyChain::acted_on_by(const GroupElement& g) const
{
    SharblyChain out(n_, degree_);
    for (const auto& [b, c] : terms_) {
        auto moved = act(g, b);
        out.add(moved.basic, moved.sign * c);
    }
    return out;
}

SharblyChain operator+(const SharblyChain& a, const SharblyChain& b)
{
    SharblyChain out = a;
    out.add(b);
    return out;
}

SharblyChain operator-(const SharblyChain& a, const SharblyChain& b)
{
    SharblyChain out = a;
    out.add(b, -1);
    return out;
}

SharblyChain boundary(const BasicSharbly& basic)
{
    if (basic.degree() == 0) throw std::invalid_argument("boundary of a degree-0 sharbly");
    SharblyChain out(basic.n, basic.degree() - 1);
    int sign = 1;
    for (std::size_t i = 0; i < basic.vectors.size(); ++i, sign = -sign) {
        std::vector<IntVector> face;
        for (std::size_t j = 0; j < basic.vectors.size(); ++j)
            if (j != i) face.push_back(basic.vectors[j]);
        // faces of a canonical list stay sorted and distinct; only the span can fail
        if (auto c = canonical_from_primitive(basic.n, std::move(face))) out.add(c->basic, sign * c->sign);
    }
    return out;
}

SharblyChain boundary(const SharblyChain& chain)
{
    if (chain.degree() == 0) throw std::invalid_argument("boundary of a degree-0 chain");
    SharblyChain out(chain.n(), chain.degree() - 1);
    for (const auto& [b, c] : chain.terms()) out.add(boundary(b), c);
    return out;
}

Signed act(const GroupElement& g, const BasicSharbly& a)
{
    std::vector<IntVector> moved;
    for (const auto& v : a.vectors) moved.push_back(g.apply(v));
    auto c = canonicalize(a.n, moved);
    if (!c) throw std::logic_error("group action produced a degenerate sharbly");
    return *c;
}

std::optional<Equivalence> equivalent(const BasicSharbly& a, const BasicSharbly& b, const Budget& budget)
{
    std::optional<Equivalence> out;
    for_each_equivalence(a, b, budget, [&](const GroupElement& g, int sign) {
        out = Equivalence{g, sign};
        return true;
    });
    return out;
}

std::optional<GroupElement> find_negator(const BasicSharbly& a, const Budget& budget)
{
    std::optional<GroupElement> out;
    for_each_equivalence(a, a, budget, [&](const GroupElement& g, int sign) {
        if (sign == -1) out = g;
        return sign == -1;
    });
    return out;
}

std::vector<Integer> det_profile(const BasicSharbly& a)
{
    std::vector<Integer> out;
    for_each_subset(a.vectors.size(), a.n, [&](const std::vector<std::size_t>& idx) {
        std::vector<const IntVector*> cols;
        for (auto i : idx) cols.push_back(&a.vectors[i]);
        out.push_back(abs_det(cols));
    });
    std::sort(out.begin(), out.end());
    return out;
}

ClassLookup OrbitDictionary::classify(const BasicSharbly& a)
{
    Key key{a.vectors.size(), det_profile(a)};
    std::lock_guard lock(mutex_);
    auto& bucket = by_key_[key];
    for (auto id : bucket) {
        if (auto e = equivalent(a, classes_[id].representative, budget_))
            return ClassLookup{id, e->sign, e->g};
    }
    OrbitClass c;
    c.id = classes_.size();
    c.representative = a;
    c.negator = find_negator(a, budget_);
    c.is_zero = c.negator.has_value();
    classes_.push_back(c);
    bucket.push_back(c.id);
    return ClassLookup{c.id, 1, GroupElement::identity(a.n)};
}

OrbitClass OrbitDictionary::at(std::size_t id) const
{
    std::lock_guard lock(mutex_);
    return classes_.at(id);
}

std::size_t OrbitDictionary::size() const
{
    std::lock_guard lock(mutex_);
    return classes_.size();
}

CoinvariantChain project_coinvariants(const SharblyChain& chain, OrbitDictionary& dict)
{
    CoinvariantChain out;
    for (const auto& [b, c] : chain.terms()) {
        const auto found = dict.classify(b);
        if (dict.at(found.class_id).is_zero) continue;
        auto [it, inserted] = out.terms.try_emplace(found.class_id, 0);
        it->second += found.sign * c;
        if (sgn(it->second) == 0) out.terms.erase(it);
    }
    return out;
}

int cone_orientation(const std::vector<IntVector>& vectors)
{
    std::vector<Vector> rays;
    for (const auto& v : vectors) rays.push_back(voronoi::rank1(v));
    const Matrix m = Matrix::from_rows(rays);
    if (!m.is_square()) throw std::invalid_argument("cone needs exactly dim Y rays");
    return sgn(exactq::det(m));
}

OrientedCone sharbly_of_cone(const std::vector<IntVector>& vectors, int orientation)
{
    if (vectors.empty()) throw std::invalid_argument("empty cone");
    if (orientation != 1 && orientation != -1) throw std::invalid_argument("orientation datum must be +-1");
    const std::size_t n = vectors.front().size();
    if (vectors.size() != voronoi::sym_dim(n)) throw std::invalid_argument("cone needs exactly dim Y rays");
    auto c = canonicalize(n, vectors);
    if (!c) throw std::invalid_argument("rays are dependent");
    const int det_sign = cone_orientation(c->basic.vectors);
    if (det_sign == 0) throw std::invalid_argument("rays are dependent");
    OrientedCone out;
    out.basic = c->basic;
    out.sign = orientation * det_sign;
    out.ordered = c->basic.vectors;
    if (det_sign < 0) std::swap(out.ordered[out.ordered.size() - 1], out.ordered[out.ordered.size() - 2]);
    return out;
}

}  // namespace shc::sharbly
