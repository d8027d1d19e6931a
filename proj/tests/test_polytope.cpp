#include "doctest.h"

#include "shc/polytope.hpp"

#include <numeric>
#include <random>

using namespace shc::polytope;
using shc::exactq::Matrix;
using shc::exactq::Rational;
using shc::exactq::operator+;

namespace {

PointConfiguration config_of(std::initializer_list<std::initializer_list<long>> pts)
{
    std::vector<Vector> v;
    for (auto p : pts) {
        Vector q;
        for (auto x : p) q.emplace_back(x);
        v.push_back(std::move(q));
    }
    return PointConfiguration::from_points(std::move(v));
}

// Square corners labelled 0..3 in cyclic order.
PointConfiguration square() { return config_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

// Square base 0..3 and apex 4.
PointConfiguration pyramid() { return config_of({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}}); }

// Brute force: every set of full-dimensional simplices passing the validity test.
std::vector<Triangulation> all_triangulations(const PointConfiguration& c)
{
    std::vector<Simplex> cells;
    const std::size_t k = c.ambient_dim + 1;
    std::vector<bool> mask(c.size(), false);
    std::fill(mask.begin(), mask.begin() + k, true);
    do {
        Simplex s;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (mask[i]) s.push_back(i);
        if (orientation(c, s) != 0) cells.push_back(s);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    std::vector<Triangulation> out;
    for (std::size_t bits = 1; bits < (std::size_t{1} << cells.size()); ++bits) {
        Triangulation t;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (bits >> i & 1) t.insert(cells[i]);
        if (is_valid_triangulation(c, t)) out.push_back(t);
    }
    return out;
}

}  // namespace

TEST_CASE("affine dependence")
{
    auto line = config_of({{0}, {1}, {2}});
    std::vector<Label> all{0, 1, 2};
    auto c = affine_dependence(line, all);
    CHECK(c.positive == std::vector<Label>{0, 2});
    CHECK(c.negative == std::vector<Label>{1});
    CHECK(c.dependence == Vector{1, -2, 1});

    std::vector<Label> four{0, 1, 2, 3};
    c = affine_dependence(square(), four);
    CHECK(c.positive == std::vector<Label>{0, 2});
    CHECK(c.negative == std::vector<Label>{1, 3});

    auto tri = config_of({{0, 0}, {1, 0}, {0, 1}});
    std::vector<Label> three{0, 1, 2};
    CHECK_THROWS_AS(affine_dependence(tri, three), std::invalid_argument);
    auto doubled = config_of({{0}, {1}, {2}, {3}});
    CHECK_THROWS_AS(affine_dependence(doubled, four), std::invalid_argument);
}

TEST_CASE("convex hull facets")
{
    auto tri = config_of({{0, 0}, {1, 0}, {0, 1}});
    CHECK(convex_hull_facets(tri).size() == 3);
    auto sq = convex_hull_facets(square());
    CHECK(sq.size() == 4);
    for (const auto& f : sq) {
        CHECK(f.vertices.size() == 2);
        for (const auto& p : square().points) {
            Rational v = f.functional[0];
            for (std::size_t i = 0; i < p.size(); ++i) v += f.functional[i + 1] * p[i];
            CHECK(v >= 0);
        }
    }
    CHECK_THROWS_AS(convex_hull_facets(config_of({{0, 0}, {1, 1}, {2, 2}})), DegenerateConfiguration);

    // 3-cube: 6 facets of 4 vertices each
    auto cube = config_of({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
    auto cf = convex_hull_facets(cube);
    CHECK(cf.size() == 6);
    for (const auto& f : cf) CHECK(f.vertices.size() == 4);
}

TEST_CASE("placing and validity on the square")
{
    auto sq = square();
    auto placed = placing_triangulation(sq);
    auto brute = all_triangulations(sq);
    CHECK(brute.size() == 2);
    CHECK(std::find(brute.begin(), brute.end(), placed.triangulation) != brute.end());
    CHECK(check_regularity_witness(sq, placed.triangulation, placed.witness));
    CHECK(lift_triangulation(sq, placed.witness) == placed.triangulation);

    CHECK(is_valid_triangulation(sq, {{0, 1, 3}, {1, 2, 3}}));
    CHECK_FALSE(is_valid_triangulation(sq, {{0, 1, 2}, {0, 1, 3}}));
    CHECK_FALSE(is_valid_triangulation(sq, {{0, 1, 2}}));

    auto tri = config_of({{0, 0}, {1, 0}, {0, 1}});
    CHECK(placing_triangulation(tri).triangulation == Triangulation{{0, 1, 2}});
    CHECK(lift_triangulation(tri, {5, -1, 2}) == Triangulation{{0, 1, 2}});
}

TEST_CASE("lifting")
{
    auto sq = square();
    CHECK(lift_triangulation(sq, {0, 0, 0, 1}) == Triangulation{{0, 1, 2}, {0, 2, 3}});
    CHECK_THROWS_AS(lift_triangulation(sq, {0, 0, 0, 0}), NonGenericHeights);
    CHECK_THROWS_AS(lift_triangulation(sq, {0, 1, 2, 1}), NonGenericHeights);
}

TEST_CASE("regularity")
{
    auto sq = square();
    for (const auto& t : all_triangulations(sq)) {
        auto w = is_regular(sq, t);
        REQUIRE(w.has_value());
        CHECK(check_regularity_witness(sq, t, *w));
        CHECK(lift_triangulation(sq, *w) == t);
    }
    CHECK_THROWS(is_regular(sq, {{0, 1, 2}}));

    // Two nested triangles: of the two twisted triangulations exactly one is
    // a triangulation, and it is not regular.
    auto mother = config_of({{0, 0}, {12, 0}, {0, 12}, {3, 3}, {6, 3}, {3, 6}});
    const Triangulation twist_a{{3, 4, 5}, {0, 3, 4}, {1, 4, 5}, {2, 3, 5}, {0, 1, 4}, {1, 2, 5}, {0, 2, 3}};
    const Triangulation twist_b{{3, 4, 5}, {0, 3, 4}, {1, 4, 5}, {2, 3, 5}, {0, 1, 3}, {1, 2, 4}, {0, 2, 5}};
    const bool a = is_valid_triangulation(mother, twist_a);
    const bool b = is_valid_triangulation(mother, twist_b);
    CHECK(a != b);
    CHECK_FALSE(is_regular(mother, a ? twist_a : twist_b).has_value());
}

TEST_CASE("circuit triangulations")
{
    auto line = config_of({{0}, {1}, {2}});
    std::vector<Label> all{0, 1, 2};
    auto [plus, minus] = gkz_two_triangulations(affine_dependence(line, all));
    CHECK(plus == Triangulation{{1, 2}, {0, 1}});
    CHECK(minus == Triangulation{{0, 2}});

    std::vector<Label> four{0, 1, 2, 3};
    std::tie(plus, minus) = gkz_two_triangulations(affine_dependence(square(), four));
    CHECK(plus == Triangulation{{1, 2, 3}, {0, 1, 3}});
    CHECK(minus == Triangulation{{0, 2, 3}, {0, 1, 2}});
}

TEST_CASE("flips on small configurations")
{
    auto sq = square();
    const Triangulation t{{0, 1, 3}, {1, 2, 3}};
    auto flips = supported_flips(sq, t);
    REQUIRE(flips.size() == 1);
    auto u = apply_flip(sq, t, flips[0]);
    CHECK(u == Triangulation{{0, 2, 3}, {0, 1, 2}});
    CHECK(apply_flip(sq, u, flips[0].reversed()) == t);
    CHECK_THROWS(apply_flip(sq, u, flips[0]));

    auto tri = config_of({{0, 0}, {1, 0}, {0, 1}});
    CHECK(supported_flips(tri, {{0, 1, 2}}).empty());

    auto pyr = pyramid();
    const Triangulation before{{0, 1, 2, 4}, {0, 2, 3, 4}};
    auto pf = supported_flips(pyr, before);
    REQUIRE(pf.size() == 1);
    CHECK(pf[0].circuit.labels == std::vector<Label>{0, 1, 2, 3});
    CHECK(pf[0].links == std::vector<Simplex>{{4}});
    CHECK(apply_flip(pyr, before, pf[0]) == Triangulation{{0, 1, 3, 4}, {1, 2, 3, 4}});

    CHECK(enumerate_regular_triangulations(sq).size() == 2);
    CHECK(enumerate_regular_triangulations(pyr).size() == 2);
    CHECK(enumerate_regular_triangulations(tri).size() == 1);
    CHECK(flip_path(sq, t, t).empty());
    CHECK(flip_path(sq, t, u).size() == 1);
}

TEST_CASE("flip identity")
{
    // pyramid: -[2345]+[1345]-[1245]+[1235] = ([1235]+[1345]) - ([2345]+[1245])
    auto pyr = pyramid();
    const Triangulation t{{0, 1, 2, 4}, {0, 2, 3, 4}};
    auto flips = supported_flips(pyr, t);
    REQUIRE(flips.size() == 1);
    auto id = verify_flip_identity(pyr, flips[0]);
    CHECK(id.holds);
    CHECK(id.signs == std::vector<int>{1});
    OrientedSum expected;
    expected.add({1, 2, 3, 4}, -1);
    expected.add({0, 2, 3, 4}, 1);
    expected.add({0, 1, 3, 4}, -1);
    expected.add({0, 1, 2, 4}, 1);
    CHECK(id.lhs == expected);
    OrientedSum removed_minus_inserted;
    for (const auto& s : flips[0].removed) removed_minus_inserted.add(s, orientation(pyr, s));
    for (const auto& s : flips[0].inserted) removed_minus_inserted.add(s, -orientation(pyr, s));
    CHECK(id.rhs == removed_minus_inserted);
    CHECK(orientation(pyr, std::vector<Label>{0, 1, 2, 4}) == 1);

    // a midpoint on the base of a triangle, the apex as the single link
    auto split = config_of({{0, 0}, {1, 0}, {2, 0}, {1, 1}});
    const Triangulation halves{{0, 1, 3}, {1, 2, 3}};
    auto sf = supported_flips(split, halves);
    REQUIRE(sf.size() == 1);
    CHECK(verify_flip_identity(split, sf[0]).holds);
    // the reverse (insertion) flip is found from the unsplit triangle
    auto back = supported_flips(split, {{0, 2, 3}});
    REQUIRE(back.size() == 1);
    CHECK(apply_flip(split, {{0, 2, 3}}, back[0]) == halves);
    CHECK(verify_flip_identity(split, back[0]).holds);
}

TEST_CASE("exactly two boundary-annihilating sign patterns per circuit")
{
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> coord(-3, 3);
    int circuits = 0;
    for (int trial = 0; trial < 200 && circuits < 25; ++trial) {
        const std::size_t p = 3 + trial % 4;  // 3..6 points
        const std::size_t dim = p - 2;
        std::vector<Vector> pts;
        for (std::size_t i = 0; i < p; ++i) {
            Vector q;
            for (std::size_t k = 0; k < dim; ++k) q.emplace_back(coord(rng));
            pts.push_back(std::move(q));
        }
        auto c = PointConfiguration::from_points(pts);
        std::vector<Label> labels(p);
        std::iota(labels.begin(), labels.end(), 0);
        Circuit z;
        try {
            z = affine_dependence(c, labels);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (z.labels.size() != p) continue;
        ++circuits;
        std::vector<std::size_t> good;
        for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
            OrientedSum chain;
            for (std::size_t i = 0; i < p; ++i) {
                std::vector<Label> face;
                for (std::size_t j = 0; j < p; ++j)
                    if (j != i) face.push_back(labels[j]);
                chain.add(face, (mask >> i & 1) ? -1 : 1);
            }
            if (shc::boundary(chain).empty()) good.push_back(mask);
        }
        // (-1)^i and (-1)^{i+1} with i 1-based: bit i set on even/odd positions
        std::size_t odd = 0;
        for (std::size_t i = 0; i < p; i += 2) odd |= std::size_t{1} << i;
        const std::size_t even = ((std::size_t{1} << p) - 1) ^ odd;
        CHECK(good == std::vector<std::size_t>{std::min(odd, even), std::max(odd, even)});
    }
    CHECK(circuits >= 10);
}

TEST_CASE("triangulation invariants under random point sets")
{
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> coord(-4, 4);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<Vector> pts;
        for (int i = 0; i < 6; ++i) pts.push_back(Vector{Rational(coord(rng)), Rational(coord(rng))});
        auto c = PointConfiguration::from_points(pts);
        if (!c.full_dimensional()) continue;
        auto all = enumerate_regular_triangulations(c);
        REQUIRE_FALSE(all.empty());
        Rational volume = -1;
        for (const auto& t : all) {
            Rational v = 0;
            for (const auto& s : t) v += normalized_volume(c, s);
            if (volume < 0) volume = v;
            CHECK(v == volume);
            for (const auto& f : supported_flips(c, t)) {
                auto u = apply_flip(c, t, f);
                CHECK(is_valid_triangulation(c, u));
                CHECK(apply_flip(c, u, f.reversed()) == t);
                CHECK(verify_flip_identity(c, f).holds);
            }
        }
        // telescoping along a path between the first and last regular triangulation
        auto path = flip_path(c, all.front(), all.back());
        OrientedSum telescoped;
        for (const auto& f : path) telescoped.add(verify_flip_identity(c, f).lhs);
        CHECK(telescoped == oriented_sum(c, all.front()) - oriented_sum(c, all.back()));

        // a unimodular affine image keeps validity and regularity
        const Matrix g{{2, 1}, {1, 1}};
        std::vector<Vector> moved;
        for (const auto& p : pts) moved.push_back(g * p + Vector{3, -1});
        auto image = PointConfiguration::from_points(moved);
        for (const auto& t : all) {
            CHECK(is_valid_triangulation(image, t));
            CHECK(is_regular(image, t).has_value());
        }
    }
}
