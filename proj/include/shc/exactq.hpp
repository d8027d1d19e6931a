#pragma once

// Exact rational scalars, vectors and dense matrices.
//
// Every geometric computation in the library goes through these types; there
// is no floating point on any path that feeds a verdict or a certificate.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shc::exactq {

using Integer = mpz_class;
/// Always kept canonical: lowest terms, positive denominator, zero is 0/1.
using Rational = mpq_class;
using ExactScalar = Rational;
using Vector = std::vector<Rational>;
/// Integer vectors (minimal vectors, group-element columns). Arithmetic on
/// them is overflow-checked.
using IntVector = std::vector<std::int64_t>;

Rational make_rational(const Integer& num, const Integer& den);

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

Vector to_vector(const IntVector& v);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::initializer_list<std::initializer_list<long>> rows);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::span<const Vector> rows);
    static Matrix from_columns(std::span<const Vector> cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    Matrix transpose() const;

    Vector operator*(const Vector& x) const;
    Matrix operator*(const Matrix& other) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

/// In-place reduced row echelon form; returns pivot columns in row order.
std::vector<std::size_t> reduce_row_echelon(Matrix& m);

std::size_t rank(const Matrix& m);
/// Throws std::invalid_argument for non-square input.
Rational det(const Matrix& m);
/// Some x with m x = rhs, or nullopt when the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& rhs);
/// Basis of the right kernel.
std::vector<Vector> nullspace(const Matrix& m);

/// Dimension of the affine span. Throws on an empty list or mixed dimensions.
std::size_t affine_dim(std::span<const Vector> points);

/// Integer multiple of v with content 1 and first nonzero entry positive.
/// Throws std::invalid_argument for the zero vector.
IntVector primitive_normalize(const Vector& v);
IntVector primitive_normalize(const IntVector& v);

Rational dot(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator+(const Vector& a, const Vector& b);
Vector operator*(const Rational& s, const Vector& v);
bool is_zero(const Vector& v);

/// Checked int64 helpers; throw std::overflow_error.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t to_int64(const Integer& z);

/// Find x with rows(ge) x >= ge_rhs, rows(eq) x == eq_rhs, and x_j >= 0 for
/// every j flagged in nonneg. Exact two-phase-free (phase I only) simplex with
/// Bland's rule. Returns nullopt when infeasible.
struct LinearSystem {
    std::size_t num_vars = 0;
    std::vector<Vector> ge_rows;
    Vector ge_rhs;
    std::vector<Vector> eq_rows;
    Vector eq_rhs;
    std::vector<bool> nonneg;  // empty means all free
};
std::optional<Vector> find_feasible_point(const LinearSystem& system);

}  // namespace shc::exactq
