#include "shc/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace shc::polytope {

using exactq::Matrix;

namespace {

/// Barycentric coordinates of p with respect to the affinely independent
/// labels, or nullopt when p is outside their affine span.
std::optional<Vector> barycentric(const PointConfiguration& config, const std::vector<Label>& labels, const Vector& p)
{
    Matrix m(config.ambient_dim + 1, labels.size());
    for (std::size_t j = 0; j < labels.size(); ++j) {
        const auto& q = config.points[labels[j]];
        m(0, j) = 1;
        for (std::size_t r = 0; r < q.size(); ++r) m(r + 1, j) = q[r];
    }
    Vector rhs;
    rhs.reserve(p.size() + 1);
    rhs.emplace_back(1);
    rhs.insert(rhs.end(), p.begin(), p.end());
    return exactq::solve(m, rhs);
}

Simplex without(const Simplex& s, std::size_t i)
{
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i) f.push_back(s[j]);
    return f;
}

Simplex with(Simplex s, Label l)
{
    s.insert(std::upper_bound(s.begin(), s.end(), l), l);
    return s;
}

/// Codimension-one faces mapped to the (simplex, opposite vertex) pairs containing them.
std::map<Simplex, std::vector<std::pair<const Simplex*, Label>>> walls_of(const Triangulation& t)
{
    std::map<Simplex, std::vector<std::pair<const Simplex*, Label>>> walls;
    for (const auto& s : t)
        for (std::size_t i = 0; i < s.size(); ++i) walls[without(s, i)].emplace_back(&s, s[i]);
    return walls;
}

void require_full_dimensional(const PointConfiguration& config)
{
    if (!config.full_dimensional()) throw DegenerateConfiguration("configuration is not full-dimensional");
}

Triangulation place(const PointConfiguration& config, std::span<const Label> order)
{
    Triangulation t;
    for (auto l : order) {
        if (l >= config.size()) throw std::out_of_range("placing order label out of range");
        if (t.empty()) {
            t.insert({l});
            continue;
        }
        auto coords = barycentric(config, *t.begin(), config.points[l]);
        if (!coords) {
            Triangulation next;
            for (const auto& s : t) next.insert(with(s, l));
            t = std::move(next);
            continue;
        }
        Triangulation added;
        for (const auto& [face, owners] : walls_of(t)) {
            if (owners.size() != 1) continue;
            const auto& [simplex, opposite] = owners.front();
            auto b = barycentric(config, *simplex, config.points[l]);
            const auto at = std::find(simplex->begin(), simplex->end(), opposite) - simplex->begin();
            if (sgn((*b)[at]) < 0) added.insert(with(face, l));
        }
        t.insert(added.begin(), added.end());
    }
    return t;
}

Rational hull_volume(const PointConfiguration& config)
{
    std::vector<Label> order(config.size());
    std::iota(order.begin(), order.end(), 0);
    Rational total = 0;
    for (const auto& s : place(config, order)) total += normalized_volume(config, s);
    return total;
}

/// True when conv(s) and conv(t) meet in exactly conv(s & t).
bool intersect_properly(const PointConfiguration& config, const Simplex& s, const Simplex& t)
{
    std::vector<Label> only_s, only_t, common;
    std::set_difference(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(only_s));
    std::set_difference(t.begin(), t.end(), s.begin(), s.end(), std::back_inserter(only_t));
    std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(common));
    if (only_s.empty() || only_t.empty()) return only_s.empty() && only_t.empty();

    // Variables: lambda on only_s, only_t, common (in that order).
    std::vector<Label> all = only_s;
    all.insert(all.end(), only_t.begin(), only_t.end());
    all.insert(all.end(), common.begin(), common.end());
    const std::size_t d = config.ambient_dim;

    exactq::LinearSystem sys;
    sys.num_vars = all.size();
    for (std::size_t r = 0; r <= d; ++r) {
        Vector row(all.size());
        for (std::size_t j = 0; j < all.size(); ++j) row[j] = r == 0 ? Rational(1) : config.points[all[j]][r - 1];
        sys.eq_rows.push_back(std::move(row));
        sys.eq_rhs.emplace_back(0);
    }
    Vector normal(all.size());
    for (std::size_t j = 0; j < only_s.size(); ++j) normal[j] = 1;
    sys.eq_rows.push_back(normal);
    sys.eq_rhs.emplace_back(1);
    for (std::size_t j = 0; j < only_t.size(); ++j) {
        Vector row(all.size());
        row[only_s.size() + j] = -1;
        sys.ge_rows.push_back(std::move(row));
        sys.ge_rhs.emplace_back(0);
    }
    sys.nonneg.assign(all.size(), false);
    for (std::size_t j = 0; j < only_s.size(); ++j) sys.nonneg[j] = true;
    return !exactq::find_feasible_point(sys).has_value();
}

struct WallInequality {
    std::vector<std::pair<Label, Rational>> terms;  // sum terms >= 1
};

std::vector<WallInequality> regularity_inequalities(const PointConfiguration& config, const Triangulation& t)
{
    std::vector<WallInequality> out;
    for (const auto& [face, owners] : walls_of(t)) {
        if (owners.size() == 1) continue;
        if (owners.size() != 2) throw std::invalid_argument("wall shared by more than two simplices");
        const Label a = owners[0].second;
        const Label b = owners[1].second;
        Simplex labels = with(with(face, a), b);
        Matrix m(config.ambient_dim + 1, labels.size());
        for (std::size_t j = 0; j < labels.size(); ++j) {
            m(0, j) = 1;
            for (std::size_t r = 0; r < config.ambient_dim; ++r) m(r + 1, j) = config.points[labels[j]][r];
        }
        auto kernel = exactq::nullspace(m);
        if (kernel.size() != 1) throw std::invalid_argument("wall with degenerate neighbours");
        auto& lambda = kernel.front();
        const auto bpos = std::find(labels.begin(), labels.end(), b) - labels.begin();
        if (sgn(lambda[bpos]) < 0)
            for (auto& x : lambda) x = -x;
        WallInequality w;
        for (std::size_t j = 0; j < labels.size(); ++j)
            if (sgn(lambda[j]) != 0) w.terms.emplace_back(labels[j], lambda[j]);
        out.push_back(std::move(w));
    }
    std::vector<bool> used(config.size(), false);
    for (const auto& s : t)
        for (auto l : s) used[l] = true;
    for (Label q = 0; q < config.size(); ++q) {
        if (used[q]) continue;
        bool found = false;
        for (const auto& s : t) {
            auto b = barycentric(config, s, config.points[q]);
            if (!b || std::any_of(b->begin(), b->end(), [](const Rational& x) { return sgn(x) < 0; })) continue;
            WallInequality w;
            w.terms.emplace_back(q, 1);
            for (std::size_t j = 0; j < s.size(); ++j)
                if (sgn((*b)[j]) != 0) w.terms.emplace_back(s[j], -(*b)[j]);
            out.push_back(std::move(w));
            found = true;
            break;
        }
        if (!found) throw std::invalid_argument("point not covered by the triangulation");
    }
    return out;
}

}  // namespace

PlacingResult placing_triangulation(const PointConfiguration& config, std::span<const Label> order)
{
    require_full_dimensional(config);
    PlacingResult result;
    result.triangulation = place(config, order);
    if (result.triangulation.empty() || result.triangulation.begin()->size() != config.ambient_dim + 1)
        throw DegenerateConfiguration("placing order does not span the configuration");
    if (result.triangulation.size() == 1 && config.size() == config.ambient_dim + 1) {
        result.witness.assign(config.size(), 0);
        return result;
    }
    auto witness = is_regular(config, result.triangulation);
    if (!witness) throw std::logic_error("placing triangulation failed its regularity check");
    result.witness = std::move(*witness);
    return result;
}

PlacingResult placing_triangulation(const PointConfiguration& config)
{
    std::vector<Label> order(config.size());
    std::iota(order.begin(), order.end(), 0);
    return placing_triangulation(config, order);
}

Triangulation lift_triangulation(const PointConfiguration& config, const LiftingHeights& heights)
{
    require_full_dimensional(config);
    if (heights.size() != config.size()) throw std::invalid_argument("one height per point required");
    const std::size_t d = config.ambient_dim;
    std::vector<Vector> lifted;
    for (std::size_t i = 0; i < config.size(); ++i) {
        Vector h;
        h.emplace_back(1);
        h.insert(h.end(), config.points[i].begin(), config.points[i].end());
        h.push_back(heights[i]);
        lifted.push_back(std::move(h));
    }
    std::vector<HullFacet> facets;
    try {
        facets = cone_facets(lifted);
    } catch (const DegenerateConfiguration&) {
        if (config.size() == d + 1) {
            Simplex all(config.size());
            std::iota(all.begin(), all.end(), 0);
            return {all};
        }
        throw NonGenericHeights("heights are affine on the configuration");
    }
    Triangulation t;
    for (const auto& f : facets) {
        if (sgn(f.functional.back()) <= 0) continue;
        if (f.vertices.size() != d + 1) throw NonGenericHeights("lower facet is not a simplex");
        t.insert(Simplex(f.vertices.begin(), f.vertices.end()));
    }
    return t;
}

bool is_valid_triangulation(const PointConfiguration& config, const Triangulation& triangulation)
{
    if (triangulation.empty() || !config.full_dimensional()) return false;
    const std::size_t d = config.ambient_dim;
    Rational total = 0;
    for (const auto& s : triangulation) {
        if (s.size() != d + 1) return false;
        if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
        if (s.back() >= config.size()) return false;
        const auto v = normalized_volume(config, s);
        if (sgn(v) == 0) return false;
        total += v;
    }
    if (total != hull_volume(config)) return false;
    for (auto i = triangulation.begin(); i != triangulation.end(); ++i)
        for (auto j = std::next(i); j != triangulation.end(); ++j)
            if (!intersect_properly(config, *i, *j)) return false;
    return true;
}

std::optional<LiftingHeights> is_regular(const PointConfiguration& config, const Triangulation& triangulation)
{
    if (!is_valid_triangulation(config, triangulation)) throw std::invalid_argument("triangulation is not valid");
    exactq::LinearSystem sys;
    sys.num_vars = config.size();
    for (const auto& w : regularity_inequalities(config, triangulation)) {
        Vector row(config.size());
        for (const auto& [label, c] : w.terms) row[label] += c;
        sys.ge_rows.push_back(std::move(row));
        sys.ge_rhs.emplace_back(1);
    }
    // heights are defined up to an affine function, so h >= 0 loses nothing
    sys.nonneg.assign(config.size(), true);
    if (sys.ge_rows.empty()) return LiftingHeights(config.size(), Rational(0));
    auto x = exactq::find_feasible_point(sys);
    if (!x) return std::nullopt;
    return *x;
}

bool check_regularity_witness(const PointConfiguration& config, const Triangulation& triangulation,
                              const LiftingHeights& heights)
{
    if (heights.size() != config.size()) return false;
    if (!is_valid_triangulation(config, triangulation)) return false;
    for (const auto& w : regularity_inequalities(config, triangulation)) {
        Rational value = 0;
        for (const auto& [label, c] : w.terms) value += c * heights[label];
        if (sgn(value) <= 0) return false;
    }
    return true;
}

}  // namespace shc::polytope
