#include "shc/exactq.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace shc::exactq {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational");
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

Vector to_vector(const IntVector& v)
{
    Vector out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(static_cast<long>(x));
    return out;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (long x : r) entries_.emplace_back(x);
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(std::span<const Vector> rows)
{
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(std::span<const Vector> cols)
{
    const std::size_t rows = cols.empty() ? 0 : cols.front().size();
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw std::invalid_argument("ragged columns");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const
{
    return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const
{
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Vector Matrix::operator*(const Vector& x) const
{
    if (x.size() != cols_) throw std::invalid_argument("dimension mismatch in matrix-vector product");
    Vector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Rational acc;
        for (std::size_t c = 0; c < cols_; ++c)
            if (sgn((*this)(r, c)) != 0) acc += (*this)(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

Matrix Matrix::operator*(const Matrix& other) const
{
    if (cols_ != other.rows_) throw std::invalid_argument("dimension mismatch in matrix product");
    Matrix p(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(r, k);
            if (sgn(a) == 0) continue;
            for (std::size_t c = 0; c < other.cols_; ++c) p(r, c) += a * other(k, c);
        }
    return p;
}

namespace {

// Height of a rational: bit size of the larger of |num| and den.
std::size_t height(const Rational& q)
{
    return std::max(mpz_sizeinbase(q.get_num_mpz_t(), 2), mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

}  // namespace

std::vector<std::size_t> reduce_row_echelon(Matrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t best = m.rows();
        for (std::size_t r = row; r < m.rows(); ++r) {
            if (sgn(m(r, col)) == 0) continue;
            if (best == m.rows() || height(m(r, col)) > height(m(best, col))) best = r;
        }
        if (best == m.rows()) continue;
        if (best != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(best, c));
        const Rational inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || sgn(m(r, col)) == 0) continue;
            const Rational f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (sgn(m(row, c)) != 0) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(const Matrix& m)
{
    Matrix copy = m;
    return reduce_row_echelon(copy).size();
}

Rational det(const Matrix& m)
{
    if (!m.is_square()) throw std::invalid_argument("det of non-square matrix");
    Matrix a = m;
    const std::size_t n = a.rows();
    Rational result = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = n;
        for (std::size_t r = col; r < n; ++r) {
            if (sgn(a(r, col)) == 0) continue;
            if (best == n || height(a(r, col)) > height(a(best, col))) best = r;
        }
        if (best == n) return 0;
        if (best != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(best, c));
            result = -result;
        }
        result *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(a(r, col)) == 0) continue;
            const Rational f = a(r, col) / a(col, col);
            for (std::size_t c = col; c < n; ++c)
                if (sgn(a(col, c)) != 0) a(r, c) -= f * a(col, c);
        }
    }
    return result;
}

std::optional<Vector> solve(const Matrix& m, const Vector& rhs)
{
    if (rhs.size() != m.rows()) throw std::invalid_argument("rhs size mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = rhs[r];
    }
    const auto pivots = reduce_row_echelon(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    Vector x(m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
    return x;
}

std::vector<Vector> nullspace(const Matrix& m)
{
    Matrix a = m;
    const auto pivots = reduce_row_echelon(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t affine_dim(std::span<const Vector> points)
{
    if (points.empty()) throw std::invalid_argument("affine_dim of empty point list");
    const std::size_t dim = points.front().size();
    Matrix diffs(points.size() - 1, dim);
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].size() != dim) throw std::invalid_argument("points of mixed dimension");
        for (std::size_t c = 0; c < dim; ++c) diffs(i - 1, c) = points[i][c] - points[0][c];
    }
    return rank(diffs);
}

IntVector primitive_normalize(const Vector& v)
{
    Integer lcm = 1;
    bool nonzero = false;
    for (const auto& x : v) {
        if (sgn(x) != 0) nonzero = true;
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    }
    if (!nonzero) throw std::invalid_argument("primitive_normalize of zero vector");
    std::vector<Integer> ints;
    ints.reserve(v.size());
    Integer g = 0;
    for (const auto& x : v) {
        Integer z = x.get_num() * (lcm / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
        ints.push_back(std::move(z));
    }
    int lead = 0;
    for (const auto& z : ints)
        if (sgn(z) != 0) {
            lead = sgn(z);
            break;
        }
    IntVector out;
    out.reserve(ints.size());
    for (auto& z : ints) out.push_back(to_int64(lead * (z / g)));
    return out;
}

IntVector primitive_normalize(const IntVector& v)
{
    return primitive_normalize(to_vector(v));
}

Rational dot(const Vector& a, const Vector& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("dot of mismatched vectors");
    Rational acc;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Vector operator-(const Vector& a, const Vector& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vector operator+(const Vector& a, const Vector& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vector operator*(const Rational& s, const Vector& v)
{
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

bool is_zero(const Vector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in addition");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in multiplication");
    return r;
}

std::int64_t to_int64(const Integer& z)
{
    if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in int64");
    return z.get_si();
}

}  // namespace shc::exactq
