#include "doctest.h"

#include "shc/exactq.hpp"

#include <random>

using namespace shc::exactq;

namespace {

// Cofactor expansion, independent of the elimination code.
Rational cofactor_det(const Matrix& m)
{
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    Rational total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        Matrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t k = 0, kk = 0; k < n; ++k)
                if (k != c) minor(r - 1, kk++) = m(r, k);
        total += (c % 2 ? -1 : 1) * m(0, c) * cofactor_det(minor);
    }
    return total;
}

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int range)
{
    std::uniform_int_distribution<int> d(-range, range);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

}  // namespace

TEST_CASE("rank")
{
    CHECK(rank(Matrix::identity(2)) == 2);
    CHECK(rank(Matrix(3, 3)) == 0);
    const Matrix t1{{-1, -1, -1, -1, -1, -1, 0, 0, 0, 0, 0, 0},
                    {-1, 0, 0, 0, 0, 1, -1, -1, -1, -1, 0, 0},
                    {0, -1, 0, 0, 1, 0, -1, 0, 0, 1, -1, -1},
                    {1, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1}};
    CHECK(rank(t1) == 4);
    // oracle: a nonzero 4x4 minor on columns 0,1,2,6
    Matrix minor(4, 4);
    const std::size_t cols[] = {0, 1, 2, 6};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) minor(r, c) = t1(r, cols[c]);
    CHECK(cofactor_det(minor) != 0);
}

TEST_CASE("det")
{
    CHECK(det(Matrix::identity(3)) == 1);
    CHECK(det(Matrix{{0, 1}, {1, 0}}) == -1);
    CHECK(det(Matrix{{2, 1}, {1, 2}}) == 3);
    CHECK_THROWS(det(Matrix(2, 3)));

    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 5;
        auto m = random_matrix(rng, n, n, 3);
        const auto d = det(m);
        CHECK(d == cofactor_det(m));
        CHECK((d != 0) == (rank(m) == n));
    }
}

TEST_CASE("solve")
{
    CHECK(solve(Matrix::identity(2), Vector{1, 2}) == Vector{1, 2});
    CHECK_FALSE(solve(Matrix(1, 1), Vector{1}).has_value());
    CHECK(solve(Matrix{{1, 1}, {1, -1}}, Vector{2, 0}) == Vector{1, 1});

    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = random_matrix(rng, 3, 4 - trial % 3, 2);
        Vector rhs{Rational(trial % 3), Rational(1), Rational(-2)};
        if (auto x = solve(m, rhs)) CHECK(m * *x == rhs);
    }
}

TEST_CASE("affine_dim")
{
    CHECK(affine_dim(std::vector<Vector>{{1, 2}}) == 0);
    CHECK(affine_dim(std::vector<Vector>{{0}, {1}, {2}}) == 1);
    CHECK(affine_dim(std::vector<Vector>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}) == 2);
    CHECK_THROWS(affine_dim(std::vector<Vector>{}));

    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t k = 1 + trial % 4;
        auto m = random_matrix(rng, k, 5, 4);
        if (rank(m) < k) continue;
        std::vector<Vector> pts{Vector(5, Rational(1))};
        for (std::size_t i = 0; i < k; ++i) pts.push_back(pts.front() + m.row(i));
        CHECK(affine_dim(pts) == k);
    }
}

TEST_CASE("nullspace")
{
    CHECK(nullspace(Matrix::identity(3)).empty());
    auto k = nullspace(Matrix{{1, 1}});
    REQUIRE(k.size() == 1);
    CHECK(primitive_normalize(k[0]) == IntVector{1, -1});

    const Matrix cayley{{1, 1, 1, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    k = nullspace(cayley);
    REQUIRE(k.size() == 1);
    CHECK(primitive_normalize(k[0]) == IntVector{1, -1, 1, -1});
}

TEST_CASE("primitive_normalize")
{
    CHECK(primitive_normalize(IntVector{2, 4}) == IntVector{1, 2});
    CHECK(primitive_normalize(IntVector{-1, 0, 3}) == IntVector{1, 0, -3});
    CHECK(primitive_normalize(Vector{Rational(2, 3), Rational(-4, 3)}) == IntVector{1, -2});
    CHECK_THROWS(primitive_normalize(IntVector{0, 0}));

    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int trial = 0; trial < 50; ++trial) {
        Vector v{Rational(d(rng)), Rational(d(rng)), Rational(d(rng))};
        if (is_zero(v)) continue;
        const auto p = primitive_normalize(v);
        CHECK(primitive_normalize(p) == p);
        const Rational a = make_rational(d(rng) == 0 ? 5 : d(rng) * 2 + 1, 7);
        if (a != 0) CHECK(primitive_normalize(a * v) == p);
    }
}

TEST_CASE("rational text round trip")
{
    CHECK(to_string(make_rational(6, -4)) == "-3/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK(parse_rational("-3/2") == make_rational(-3, 2));
    CHECK(parse_rational("4/2") == 2);
}

TEST_CASE("feasibility")
{
    LinearSystem s;
    s.num_vars = 2;
    s.ge_rows = {{1, 1}, {1, -1}};
    s.ge_rhs = {1, 0};
    s.nonneg = {true, true};
    auto x = find_feasible_point(s);
    REQUIRE(x.has_value());
    CHECK((*x)[0] + (*x)[1] >= 1);
    CHECK((*x)[0] - (*x)[1] >= 0);

    s.ge_rows.push_back({-1, -1});
    s.ge_rhs.emplace_back(0);
    CHECK_FALSE(find_feasible_point(s).has_value());

    LinearSystem free;
    free.num_vars = 1;
    free.eq_rows = {{2}};
    free.eq_rhs = {-3};
    x = find_feasible_point(free);
    REQUIRE(x.has_value());
    CHECK((*x)[0] == make_rational(-3, 2));
}
