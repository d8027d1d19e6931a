#include "doctest.h"

#include "shc/sharbly.hpp"

#include <random>

using namespace shc::sharbly;
using shc::exactq::make_rational;

namespace {

const IntVector e1{1, 0}, e2{0, 1}, e12{1, -1};

BasicSharbly basic(std::size_t n, std::vector<IntVector> v)
{
    auto c = canonicalize(n, v);
    REQUIRE(c.has_value());
    return c->basic;
}

IntVector random_vector(std::mt19937& rng, std::size_t n)
{
    std::uniform_int_distribution<int> d(-2, 2);
    IntVector v;
    do {
        v.assign(n, 0);
        for (auto& x : v) x = d(rng);
    } while (std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; }));
    return v;
}

SharblyChain random_chain(std::mt19937& rng, std::size_t n, std::size_t k, int terms)
{
    SharblyChain c(n, k);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int t = 0; t < terms; ++t) {
        std::vector<IntVector> v;
        for (std::size_t i = 0; i < n + k; ++i) v.push_back(random_vector(rng, n));
        c.add(v, coeff(rng));
    }
    return c;
}

GroupElement random_sl(std::mt19937& rng, std::size_t n)
{
    auto g = GroupElement::identity(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int s = 0; s < 6; ++s) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        std::vector<std::int64_t> e(n * n, 0);
        for (std::size_t k = 0; k < n; ++k) e[k * n + k] = 1;
        e[i * n + j] = (s % 2) ? 1 : -1;
        g = GroupElement(n, e) * g;
    }
    return g;
}

}  // namespace

TEST_CASE("canonicalize")
{
    auto c = canonicalize(2, std::vector<IntVector>{e2, e1});
    REQUIRE(c.has_value());
    CHECK(c->sign == -1);
    CHECK(c->basic.vectors == std::vector<IntVector>{e1, e2});

    c = canonicalize(2, std::vector<IntVector>{{2, 0}, e2});
    REQUIRE(c.has_value());
    CHECK(c->basic.vectors == std::vector<IntVector>{e1, e2});
    CHECK(c->sign == 1);
    CHECK(canonicalize(2, std::vector<IntVector>{{2, 0}, e2})->sign == canonicalize(2, std::vector<IntVector>{e1, e2})->sign);

    CHECK_FALSE(canonicalize(2, std::vector<IntVector>{e1, {-3, 0}}).has_value());
    CHECK_FALSE(canonicalize(3, std::vector<IntVector>{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}).has_value());
    CHECK_THROWS(canonicalize(2, std::vector<IntVector>{e1, {0, 0}}));

    auto q = canonicalize(2, std::vector<shc::exactq::Vector>{{make_rational(1, 2), 0}, {0, -3}});
    REQUIRE(q.has_value());
    CHECK(q->basic.vectors == std::vector<IntVector>{e1, e2});

    std::mt19937 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<IntVector> v;
        for (int i = 0; i < 4; ++i) v.push_back(random_vector(rng, 3));
        auto base = canonicalize(3, v);
        if (!base) continue;
        CHECK(canonicalize(3, base->basic.vectors)->sign == 1);
        auto w = v;
        std::swap(w[trial % 4], w[(trial + 1) % 4]);
        CHECK(canonicalize(3, w)->sign == -base->sign);
        auto scaled = v;
        for (auto& x : scaled[trial % 4]) x *= -3;
        CHECK(canonicalize(3, scaled)->sign == base->sign);
        CHECK(canonicalize(3, scaled)->basic == base->basic);
    }
}

TEST_CASE("boundary")
{
    SharblyChain z(2, 1);
    z.add(std::vector<IntVector>{e1, e2, e12}, 1);
    SharblyChain expected(2, 0);
    expected.add(std::vector<IntVector>{e2, e12}, 1);
    expected.add(std::vector<IntVector>{e1, e12}, -1);
    expected.add(std::vector<IntVector>{e1, e2}, 1);
    CHECK(boundary(z) == expected);
    CHECK_THROWS(boundary(SharblyChain(2, 0)));

    const IntVector a{1, 0, 0}, b{0, 1, 0}, c{0, 0, 1}, ab{1, -1, 0}, ac{1, 0, -1}, bc{0, 1, -1};
    SharblyChain a3(3, 3);
    a3.add(std::vector<IntVector>{a, b, c, ab, ac, bc}, 1);
    auto d = boundary(a3);
    CHECK(d.size() == 6);
    auto term = canonicalize(3, std::vector<IntVector>{a, b, c, ab, bc});
    CHECK(d.terms().contains(term->basic));

    std::mt19937 rng(43);
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::size_t k = 1; k <= 3; ++k) {
            auto chain = random_chain(rng, n, k + 1, 4);
            CHECK(boundary(boundary(chain)).empty());
        }
}

TEST_CASE("equivalence witnesses from the n=2 and n=3 examples")
{
    GroupElement g(2, {0, 1, -1, 0});
    GroupElement h(2, {0, 1, -1, -1});
    auto ab = basic(2, {e1, e2});
    auto moved = act(g, ab);
    CHECK(moved.basic == ab);
    CHECK(moved.sign == -1);
    moved = act(h, ab);
    CHECK(moved.basic == basic(2, {e2, e12}));
    CHECK(moved.sign == canonicalize(2, std::vector<IntVector>{e2, e12})->sign);

    auto eq = equivalent(ab, basic(2, {e2, e12}));
    REQUIRE(eq.has_value());
    auto check = act(eq->g, ab);
    CHECK(check.basic == basic(2, {e2, e12}));
    CHECK(check.sign == eq->sign);
    CHECK(find_negator(ab).has_value());

    GroupElement k(3, {0, 0, -1, 0, 1, 1, 1, 0, 0});
    auto five = basic(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {0, 1, -1}});
    moved = act(k, five);
    CHECK(moved.basic == five);
    CHECK(moved.sign == -1);
    CHECK(find_negator(five).has_value());

    // the full A3 cone is not self-negating
    auto a3 = basic(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}});
    CHECK_FALSE(find_negator(a3).has_value());
}

TEST_CASE("orbit dictionary")
{
    OrbitDictionary dict;
    auto first = dict.classify(basic(2, {e1, e2}));
    CHECK(dict.at(first.class_id).is_zero);
    auto second = dict.classify(basic(2, {e2, e12}));
    CHECK(second.class_id == first.class_id);

    std::mt19937 rng(47);
    OrbitDictionary d3;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<IntVector> v;
        for (int i = 0; i < 4; ++i) v.push_back(random_vector(rng, 3));
        auto c = canonicalize(3, v);
        if (!c) continue;
        auto g = random_sl(rng, 3);
        auto moved = act(g, c->basic);
        auto x = d3.classify(c->basic);
        auto y = d3.classify(moved.basic);
        CHECK(x.class_id == y.class_id);
        if (!d3.at(x.class_id).is_zero) CHECK(x.sign == moved.sign * y.sign);
        // witnesses really map onto the representative
        auto rep = d3.at(y.class_id).representative;
        auto w = act(y.witness, moved.basic);
        CHECK(w.basic == rep);
        CHECK(w.sign == y.sign);
        // symmetry of equivalence
        auto forward = equivalent(c->basic, moved.basic);
        REQUIRE(forward.has_value());
        auto back = equivalent(moved.basic, c->basic);
        REQUIRE(back.has_value());
        CHECK(act(forward->g.inverse(), moved.basic).basic == c->basic);
    }
}

TEST_CASE("coinvariant projection")
{
    OrbitDictionary dict;
    SharblyChain z(2, 1);
    z.add(std::vector<IntVector>{e1, e2, e12}, make_rational(1, 6));
    CHECK(project_coinvariants(boundary(z), dict).empty());

    SharblyChain a3(3, 3);
    a3.add(std::vector<IntVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}}, 1);
    OrbitDictionary d3;
    CHECK(project_coinvariants(boundary(a3), d3).empty());

    std::mt19937 rng(53);
    for (int trial = 0; trial < 5; ++trial) {
        auto c = random_chain(rng, 3, 1, 3);
        auto g = random_sl(rng, 3);
        OrbitDictionary d;
        auto once = project_coinvariants(c, d);
        auto twice = project_coinvariants(c + c.acted_on_by(g), d);
        CoinvariantChain doubled;
        for (const auto& [id, q] : once.terms) doubled.terms[id] = 2 * q;
        CHECK(twice == doubled);
        CHECK(boundary(c.acted_on_by(g)) == boundary(c).acted_on_by(g));
    }
}

TEST_CASE("oriented cones")
{
    auto a2 = sharbly_of_cone({e1, e2, e12});
    CHECK(a2.basic == basic(2, {e1, e2, e12}));
    // canonical order e1, e1-e2, e2: det of [[1,0,0],[1,-1,1],[0,0,1]] = -1
    CHECK(a2.sign == -1);
    CHECK(cone_orientation(a2.ordered) == 1);
    CHECK(sharbly_of_cone({e12, e1, e2}).sign == a2.sign);
    CHECK(sharbly_of_cone({e1, e2, e12}, -1).sign == -a2.sign);
    CHECK_THROWS(sharbly_of_cone({e1, e2, {2, 0}}));
}
