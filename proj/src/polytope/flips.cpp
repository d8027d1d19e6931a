#include "shc/polytope.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace shc::polytope {

namespace {

Simplex set_minus(const std::vector<Label>& a, const std::vector<Label>& b)
{
    Simplex out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Simplex set_union(const std::vector<Label>& a, const std::vector<Label>& b)
{
    Simplex out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Circuit oriented_with_positive(Circuit c, Label label)
{
    if (std::find(c.positive.begin(), c.positive.end(), label) == c.positive.end()) c = c.reversed();
    return c;
}

/// Builds the flip on the circuit if T contains the joins of its positive side
/// with a common set of links; nullopt otherwise.
std::optional<Flip> flip_if_supported(const Triangulation& t, const Circuit& circuit)
{
    auto [plus, minus] = gkz_two_triangulations(circuit);
    std::optional<std::set<Simplex>> links;
    for (const auto& cell : plus) {
        std::set<Simplex> here;
        for (const auto& s : t)
            if (std::includes(s.begin(), s.end(), cell.begin(), cell.end())) here.insert(set_minus(s, cell));
        if (here.empty()) return std::nullopt;
        if (links && *links != here) return std::nullopt;
        links = std::move(here);
    }
    Flip f;
    f.circuit = circuit;
    f.links.assign(links->begin(), links->end());
    for (const auto& link : f.links) {
        for (const auto& cell : plus) f.removed.insert(set_union(cell, link));
        for (const auto& cell : minus) f.inserted.insert(set_union(cell, link));
    }
    return f;
}

}  // namespace

Flip Flip::reversed() const
{
    Flip f;
    f.circuit = circuit.reversed();
    f.links = links;
    f.removed = inserted;
    f.inserted = removed;
    return f;
}

std::pair<Triangulation, Triangulation> gkz_two_triangulations(const Circuit& circuit)
{
    Triangulation plus, minus;
    for (auto w : circuit.positive) plus.insert(set_minus(circuit.labels, {w}));
    for (auto w : circuit.negative) minus.insert(set_minus(circuit.labels, {w}));
    return {plus, minus};
}

Triangulation apply_flip(const PointConfiguration& config, const Triangulation& triangulation, const Flip& flip)
{
    for (const auto& s : flip.removed)
        if (!triangulation.contains(s)) throw std::invalid_argument("flip removes a simplex not in the triangulation");
    Triangulation out;
    for (const auto& s : triangulation)
        if (!flip.removed.contains(s)) out.insert(s);
    out.insert(flip.inserted.begin(), flip.inserted.end());
    if (!is_valid_triangulation(config, out)) throw std::invalid_argument("flip result is not a triangulation");
    return out;
}

std::vector<Flip> supported_flips(const PointConfiguration& config, const Triangulation& triangulation)
{
    std::map<std::pair<std::vector<Label>, std::vector<Label>>, Flip> found;
    auto consider = [&](const Circuit& c) {
        auto key = std::make_pair(c.labels, c.positive);
        if (found.contains(key)) return;
        if (auto f = flip_if_supported(triangulation, c)) found.emplace(std::move(key), std::move(*f));
    };

    std::map<Simplex, std::vector<const Simplex*>> walls;
    for (const auto& s : triangulation)
        for (std::size_t i = 0; i < s.size(); ++i) walls[set_minus(s, {s[i]})].push_back(&s);
    for (const auto& [wall, owners] : walls) {
        if (owners.size() != 2) continue;
        const auto both = set_union(*owners[0], *owners[1]);
        const Label b = set_minus(*owners[1], wall).front();
        consider(oriented_with_positive(affine_dependence(config, both), b));
    }

    // Insertion flips: an unused point in the relative interior of a face.
    std::vector<bool> used(config.size(), false);
    for (const auto& s : triangulation)
        for (auto l : s) used[l] = true;
    for (Label q = 0; q < config.size(); ++q) {
        if (used[q]) continue;
        for (const auto& s : triangulation) {
            auto labels = s;
            labels.insert(std::upper_bound(labels.begin(), labels.end(), q), q);
            const auto c = affine_dependence(config, labels);
            if (std::find(c.labels.begin(), c.labels.end(), q) == c.labels.end()) continue;
            const auto oriented = oriented_with_positive(c, q);
            if (oriented.positive.size() != 1) continue;
            consider(oriented);
        }
    }

    std::vector<Flip> out;
    for (auto& [key, f] : found) out.push_back(std::move(f));
    return out;
}

std::vector<Triangulation> enumerate_regular_triangulations(const PointConfiguration& config, const Budget& budget)
{
    std::set<Triangulation> seen;
    std::deque<Triangulation> queue;
    auto start = placing_triangulation(config).triangulation;
    seen.insert(start);
    queue.push_back(std::move(start));
    std::vector<Triangulation> out;
    while (!queue.empty()) {
        auto t = std::move(queue.front());
        queue.pop_front();
        for (const auto& f : supported_flips(config, t)) {
            auto next = apply_flip(config, t, f);
            if (seen.contains(next)) continue;
            seen.insert(next);
            if (seen.size() > budget.max_states) throw BudgetExceeded("regular triangulation enumeration");
            if (is_regular(config, next)) queue.push_back(std::move(next));
        }
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Flip> flip_path(const PointConfiguration& config, const Triangulation& from, const Triangulation& to,
                            const Budget& budget)
{
    if (!is_regular(config, from) || !is_regular(config, to))
        throw std::invalid_argument("flip_path needs regular triangulations");
    if (from == to) return {};
    std::map<Triangulation, std::pair<Triangulation, Flip>> parent;
    std::set<Triangulation> seen{from};
    std::deque<Triangulation> queue{from};
    while (!queue.empty()) {
        auto t = std::move(queue.front());
        queue.pop_front();
        for (const auto& f : supported_flips(config, t)) {
            auto next = apply_flip(config, t, f);
            if (seen.contains(next)) continue;
            seen.insert(next);
            if (seen.size() > budget.max_states) throw BudgetExceeded("flip path search");
            if (!is_regular(config, next)) continue;
            parent.emplace(next, std::make_pair(t, f));
            if (next == to) {
                std::vector<Flip> path;
                for (auto cur = to; cur != from;) {
                    const auto& [prev, flip] = parent.at(cur);
                    path.push_back(flip);
                    cur = prev;
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(std::move(next));
        }
    }
    throw std::logic_error("regular triangulations not connected by flips");
}

FlipIdentity verify_flip_identity(const PointConfiguration& config, const Flip& flip)
{
    FlipIdentity out;
    const auto& z = flip.circuit.labels;
    out.rhs = oriented_sum(config, flip.removed) - oriented_sum(config, flip.inserted);
    out.holds = true;
    for (const auto& link : flip.links) {
        OrientedSum faces;
        int sign = -1;
        for (std::size_t i = 0; i < z.size(); ++i, sign = -sign) {
            std::vector<Label> tuple;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != i) tuple.push_back(z[j]);
            tuple.insert(tuple.end(), link.begin(), link.end());
            faces.add(std::move(tuple), sign);
        }
        OrientedSum target;
        for (const auto& [tuple, c] : out.rhs.terms()) {
            if (!std::includes(tuple.begin(), tuple.end(), link.begin(), link.end())) continue;
            const auto rest = set_minus(tuple, link);
            if (rest.size() + 1 == z.size() && std::includes(z.begin(), z.end(), rest.begin(), rest.end()))
                target.add(tuple, c);
        }
        int e = 0;
        if (faces == target)
            e = 1;
        else if (faces.scaled(-1) == target)
            e = -1;
        out.signs.push_back(e);
        if (e == 0) out.holds = false;
        out.lhs.add(faces, e == 0 ? 1 : e);
    }
    if (out.lhs != out.rhs) out.holds = false;
    return out;
}

}  // namespace shc::polytope
