#include "doctest.h"

#include "shc/voronoi.hpp"

#include <map>
#include <random>
#include <set>

using namespace shc::voronoi;
using shc::polytope::Simplex;
using shc::polytope::Triangulation;

namespace {

// Exhaustive search in a box, independent of the ellipsoid enumeration.
MinimalVectors brute_minimum(const Matrix& gram, int box)
{
    const std::size_t n = gram.rows();
    MinimalVectors out;
    out.min_value = -1;
    IntVector x(n, -box);
    while (true) {
        bool zero = std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; });
        auto first = std::find_if(x.begin(), x.end(), [](auto v) { return v != 0; });
        if (!zero && *first > 0) {
            auto q = evaluate(gram, x);
            if (out.min_value < 0 || q < out.min_value) {
                out.min_value = q;
                out.vectors.clear();
            }
            if (q == out.min_value) out.vectors.push_back(x);
        }
        std::size_t i = 0;
        while (i < n && x[i] == box) x[i++] = -box;
        if (i == n) break;
        ++x[i];
    }
    std::sort(out.vectors.begin(), out.vectors.end());
    return out;
}

GroupElement random_sl(std::mt19937& rng, std::size_t n, int steps)
{
    auto g = GroupElement::identity(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        std::vector<std::int64_t> e(n * n, 0);
        for (std::size_t k = 0; k < n; ++k) e[k * n + k] = 1;
        e[i * n + j] = coin(rng) ? 1 : -1;
        g = GroupElement(n, e) * g;
    }
    return g;
}

}  // namespace

TEST_CASE("rank-one forms and the trace section")
{
    CHECK(rank1({1, 0}) == Vector{1, 0, 0});
    CHECK(rank1({1, -1}) == Vector{1, -1, 1});
    CHECK_THROWS(rank1({0, 0}));
    CHECK(normalize_to_section(Vector{1, 0, 0}, 2) == Vector{1, 0, 0});
    CHECK(normalize_to_section(Vector{1, -1, 1}, 2) ==
          Vector{Rational(1, 2), Rational(-1, 2), Rational(1, 2)});
    CHECK(normalize_to_section(rank1({0, 1}), 2) == Vector{0, 0, 1});

    std::mt19937 rng(2);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        IntVector v{d(rng), d(rng), d(rng)};
        if (v == IntVector{0, 0, 0}) continue;
        auto y = rank1(v);
        Matrix full(3, 3);
        std::size_t at = 0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j, ++at) full(i, j) = full(j, i) = y[at];
        CHECK(shc::exactq::rank(full) == 1);
        const Rational a = shc::exactq::make_rational(1 + trial, 1 + trial % 4);
        CHECK(normalize_to_section(a * y, 3) == normalize_to_section(y, 3));
    }
}

TEST_CASE("minimal vectors")
{
    auto id = minimal_vectors(Matrix::identity(2));
    CHECK(id.min_value == 1);
    CHECK(id.vectors == std::vector<IntVector>{{0, 1}, {1, 0}});

    auto a2 = minimal_vectors(Matrix{{2, 1}, {1, 2}});
    CHECK(a2.min_value == 2);
    CHECK(a2.vectors == std::vector<IntVector>{{0, 1}, {1, -1}, {1, 0}});
    auto brute = brute_minimum(Matrix{{2, 1}, {1, 2}}, 2);
    CHECK(brute.min_value == a2.min_value);
    CHECK(brute.vectors == a2.vectors);

    auto a3 = form_from_minvecs(an_vectors(3), "A3");
    auto mv = minimal_vectors(a3.gram);
    std::set<IntVector> expected{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}};
    CHECK(std::set<IntVector>(mv.vectors.begin(), mv.vectors.end()) == expected);

    CHECK_THROWS_AS(minimal_vectors(Matrix{{1, 2}, {2, 1}}), NotPositiveDefinite);

    // random positive definite forms against the box search
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix b(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) b(i, j) = d(rng);
        if (shc::exactq::det(b) == 0) continue;
        const Matrix g = b.transpose() * b;
        auto fast = minimal_vectors(g);
        // Q(x) >= |x|^2 / |B^{-1}|^2; a box of 12 covers these small examples
        auto slow = brute_minimum(g, 6);
        CHECK(fast.min_value == slow.min_value);
        CHECK(fast.vectors == slow.vectors);
    }
}

TEST_CASE("perfect forms from minimal vectors")
{
    auto a2 = form_from_minvecs({{1, 0}, {0, 1}, {1, -1}});
    CHECK(a2.gram == Matrix{{2, 1}, {1, 2}});
    CHECK(a2.min_value == 2);

    CHECK_THROWS(form_from_minvecs({{1, 0}, {0, 1}}));
    // e1, e2, e1+e2 has a form but e1-e2 is as short
    CHECK_THROWS(form_from_minvecs({{1, 0}, {0, 1}, {1, 1}, {1, 2}}));

    for (std::size_t n = 2; n <= 5; ++n)
        for (const auto& d : builtin_dataset(n)) {
            auto f = form_from_minvecs(d.vectors, d.name);
            auto mv = minimal_vectors(f.gram);
            std::set<IntVector> got(mv.vectors.begin(), mv.vectors.end());
            std::set<IntVector> want;
            for (auto v : d.vectors) {
                if (*std::find_if(v.begin(), v.end(), [](auto x) { return x != 0; }) < 0)
                    for (auto& x : v) x = -x;
                want.insert(v);
            }
            CHECK_MESSAGE(got == want, d.name);
        }
}

TEST_CASE("built-in datasets")
{
    CHECK(builtin_dataset(2).size() == 1);
    CHECK(builtin_dataset(2)[0].vectors.size() == 3);
    CHECK(builtin_dataset(3)[0].vectors.size() == 6);
    auto four = builtin_dataset(4);
    REQUIRE(four.size() == 2);
    CHECK(four[1].name == "D4");
    CHECK(four[1].vectors.size() == 12);
    CHECK(four[1].vectors[0] == IntVector{-1, -1, 0, 1});
    auto five = builtin_dataset(5);
    REQUIRE(five.size() == 3);
    CHECK(five[1].vectors.size() == 15);
    CHECK(five[2].vectors.size() == 20);
    CHECK(five[2].vectors[18] == IntVector{1, -1, 0, 0, 0});
    CHECK_THROWS(builtin_dataset(6));
    CHECK(d4_subdivision().size() == 16);
    const auto& f = d5_facet_data();
    CHECK(f.facet.size() == 16);
    CHECK(f.first.size() == 16);
    CHECK(f.second.size() == 16);
    CHECK(f.circuit == std::vector<Label>{0, 1, 5, 6, 9, 10, 12, 13});
}

TEST_CASE("tiles and facets")
{
    auto a2 = tile_of(form_from_minvecs(an_vectors(2), "A2"));
    CHECK(a2.rays.size() == 3);
    CHECK(tile_facets(a2).size() == 3);
    auto a3 = tile_of(form_from_minvecs(an_vectors(3), "A3"));
    CHECK(a3.rays.size() == 6);
    CHECK(tile_facets(a3).size() == 6);

    auto d4 = tile_of(form_from_minvecs(find_dataset_form("D4").vectors, "D4"));
    for (const auto& f : tile_facets(d4)) CHECK(f.size() == 9);

    auto d5 = tile_of(form_from_minvecs(find_dataset_form("D5").vectors, "D5"));
    CHECK(d5.rays.size() == 20);
    CHECK(d5.rays.front().size() == 15);
    std::map<std::size_t, int> census;
    for (const auto& f : tile_facets(d5)) ++census[f.size()];
    CHECK(census == std::map<std::size_t, int>{{14, 320}, {16, 80}});
    CHECK(std::binary_search(tile_facets(d5).begin(), tile_facets(d5).end(), d5_facet_data().facet));
}

TEST_CASE("face lattices")
{
    auto a2 = tile_of(form_from_minvecs(an_vectors(2), "A2"));
    auto l2 = face_lattice(a2);
    CHECK(l2.faces.size() == 7);
    std::vector<Label> one{1};
    CHECK(minimal_face(l2, one).vertices == std::vector<Label>{1});
    std::vector<Label> all{0, 1, 2};
    CHECK(minimal_face(l2, all).vertices == all);
    CHECK_THROWS(minimal_face(l2, std::vector<Label>{}));

    auto a3 = tile_of(form_from_minvecs(an_vectors(3), "A3"));
    auto l3 = face_lattice(a3);
    std::vector<Label> edge{0, 3};
    const auto& f = minimal_face(l3, edge);
    CHECK(f.vertices == edge);
    CHECK(f.dim == 1);
    CHECK(l3.faces.size() == 63);  // a 5-simplex

    auto d4 = tile_of(form_from_minvecs(find_dataset_form("D4").vectors, "D4"));
    auto l4 = face_lattice(d4);
    std::set<std::vector<Label>> codim1;
    for (auto i : l4.of_dimension(l4.top_dim - 1)) codim1.insert(l4.faces[i].vertices);
    auto facets = tile_facets(d4);
    CHECK(codim1 == std::set<std::vector<Label>>(facets.begin(), facets.end()));
    std::vector<std::size_t> per_dim;
    for (std::size_t k = 0; k <= l4.top_dim; ++k) per_dim.push_back(l4.of_dimension(k).size());
    CHECK(per_dim.front() == 12);
    CHECK(per_dim.back() == 1);
    auto peak = std::max_element(per_dim.begin(), per_dim.end());
    CHECK(std::is_sorted(per_dim.begin(), peak + 1));
    CHECK(std::is_sorted(peak, per_dim.end(), std::greater<>()));
    // intersections of faces are faces
    for (std::size_t i = 0; i < l4.faces.size(); i += 37)
        for (std::size_t j = 0; j < l4.faces.size(); j += 53) {
            std::vector<Label> both;
            const auto& a = l4.faces[i].vertices;
            const auto& b = l4.faces[j].vertices;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
            if (!both.empty()) CHECK(l4.index_of(both) != npos);
        }
}

TEST_CASE("stabilizers")
{
    auto a2 = tile_of(form_from_minvecs(an_vectors(2), "A2"));
    auto s2 = stabilizer(a2);
    CHECK(s2.size() == 6);
    CHECK(std::binary_search(s2.begin(), s2.end(), GroupElement::identity(2)));
    auto a3 = tile_of(form_from_minvecs(an_vectors(3), "A3"));
    auto s3 = stabilizer(a3);
    CHECK(s3.size() == 24);

    auto d4 = tile_of(form_from_minvecs(find_dataset_form("D4").vectors, "D4"));
    for (const auto* group : {&s2, &s3}) {
        for (const auto& g : *group) {
            CHECK(std::binary_search(group->begin(), group->end(), g.inverse()));
            for (std::size_t k = 0; k < group->size(); k += 5)
                CHECK(std::binary_search(group->begin(), group->end(), g * (*group)[k]));
        }
    }
    for (const auto& g : stabilizer(d4))
        for (const auto& v : d4.form.minimal_vectors) CHECK(find_line(d4.form.minimal_vectors, g.apply(v)) != npos);
}

TEST_CASE("group elements")
{
    GroupElement g(2, {0, 1, -1, 0});
    GroupElement h(2, {0, 1, -1, -1});
    CHECK(g.apply({1, 0}) == IntVector{0, -1});
    CHECK(h.apply({1, 0}) == IntVector{0, -1});
    CHECK(h.apply({0, 1}) == IntVector{1, -1});
    CHECK(g * g.inverse() == GroupElement::identity(2));
    CHECK_THROWS(GroupElement(2, {1, 1, 1, 1}));
    CHECK_THROWS(GroupElement(2, {2, 0, 0, 1}));
    CHECK(g.apply_sym(rank1({1, 2})) == rank1(g.apply({1, 2})));
}

TEST_CASE("facets move with the group")
{
    std::mt19937 rng(31);
    for (const char* name : {"A3", "D4"}) {
        auto d = find_dataset_form(name);
        auto tile = tile_of(form_from_minvecs(d.vectors, name));
        auto facets = tile_facets(tile);
        for (int trial = 0; trial < 3; ++trial) {
            auto g = random_sl(rng, d.n, 8);
            std::vector<IntVector> moved;
            for (const auto& v : d.vectors) moved.push_back(g.apply(v));
            auto moved_tile = tile_of(form_from_minvecs(moved, name));
            // labels are preserved by construction, so facets must agree
            CHECK(tile_facets(moved_tile) == facets);
        }
    }
}
