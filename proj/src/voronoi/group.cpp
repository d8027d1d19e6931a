#include "shc/voronoi.hpp"

#include <algorithm>
#include <functional>

namespace shc::voronoi {

GroupElement::GroupElement(std::size_t n, std::vector<std::int64_t> entries) : n_(n), entries_(std::move(entries))
{
    if (entries_.size() != n * n) throw std::invalid_argument("group element needs n*n entries");
    if (exactq::det(matrix()) != 1) throw std::invalid_argument("group element must have determinant 1");
}

GroupElement GroupElement::identity(std::size_t n)
{
    std::vector<std::int64_t> e(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
    return GroupElement(n, std::move(e), Unchecked{});
}

GroupElement GroupElement::from_matrix(const Matrix& m)
{
    if (!m.is_square()) throw std::invalid_argument("group element must be square");
    std::vector<std::int64_t> e;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m(r, c).get_den() != 1) throw std::invalid_argument("group element must be integral");
            e.push_back(exactq::to_int64(m(r, c).get_num()));
        }
    return GroupElement(m.rows(), std::move(e));
}

Matrix GroupElement::matrix() const
{
    Matrix m(n_, n_);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) m(r, c) = static_cast<long>((*this)(r, c));
    return m;
}

IntVector GroupElement::apply(const IntVector& v) const
{
    if (v.size() != n_) throw std::invalid_argument("vector length does not match the group element");
    IntVector out(n_, 0);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c)
            out[r] = exactq::checked_add(out[r], exactq::checked_mul((*this)(r, c), v[c]));
    return out;
}

Vector GroupElement::apply_sym(const Vector& y) const
{
    if (y.size() != sym_dim(n_)) throw std::invalid_argument("symmetric vector length does not match");
    Matrix full(n_, n_);
    std::size_t at = 0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j, ++at) full(i, j) = full(j, i) = y[at];
    const Matrix g = matrix();
    const Matrix moved = g * full * g.transpose();
    Vector out;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j) out.push_back(moved(i, j));
    return out;
}

GroupElement GroupElement::operator*(const GroupElement& other) const
{
    if (other.n_ != n_) throw std::invalid_argument("group elements of different rank");
    std::vector<std::int64_t> e(n_ * n_, 0);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c)
            for (std::size_t k = 0; k < n_; ++k)
                e[r * n_ + c] = exactq::checked_add(e[r * n_ + c], exactq::checked_mul((*this)(r, k), other(k, c)));
    return GroupElement(n_, std::move(e), Unchecked{});
}

GroupElement GroupElement::inverse() const
{
    const Matrix m = matrix();
    std::vector<Vector> columns;
    for (std::size_t i = 0; i < n_; ++i) {
        Vector unit(n_);
        unit[i] = 1;
        columns.push_back(*exactq::solve(m, unit));
    }
    return from_matrix(Matrix::from_columns(columns));
}

std::size_t find_line(const std::vector<IntVector>& vectors, const IntVector& v, int* sign)
{
    IntVector neg(v.size());
    std::transform(v.begin(), v.end(), neg.begin(), [](auto x) { return -x; });
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i] == v) {
            if (sign) *sign = 1;
            return i;
        }
        if (vectors[i] == neg) {
            if (sign) *sign = -1;
            return i;
        }
    }
    return npos;
}

std::vector<GroupElement> form_automorphisms(const Matrix& gram, const std::vector<IntVector>& minimal_vectors)
{
    const std::size_t n = gram.rows();
    const std::size_t m = minimal_vectors.size();
    std::vector<std::vector<Rational>> pairing(m, std::vector<Rational>(m));
    std::vector<Vector> as_rational;
    for (const auto& v : minimal_vectors) as_rational.push_back(exactq::to_vector(v));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) pairing[i][j] = exactq::dot(as_rational[i], gram * as_rational[j]);

    std::vector<std::size_t> basis;
    std::vector<Vector> basis_rows;
    for (std::size_t i = 0; i < m && basis.size() < n; ++i) {
        basis_rows.push_back(as_rational[i]);
        if (exactq::rank(Matrix::from_rows(basis_rows)) == basis_rows.size())
            basis.push_back(i);
        else
            basis_rows.pop_back();
    }
    if (basis.size() < n) throw std::invalid_argument("minimal vectors do not span");
    const Matrix b = Matrix::from_columns(basis_rows);

    std::vector<GroupElement> out;
    std::vector<std::size_t> image(n);
    std::vector<int> sign(n);
    std::vector<bool> taken(m, false);
    std::function<void(std::size_t)> extend = [&](std::size_t k) {
        if (k == n) {
            std::vector<Vector> cols;
            for (std::size_t i = 0; i < n; ++i) cols.push_back(Rational(sign[i]) * as_rational[image[i]]);
            // g B = W
            const Matrix w = Matrix::from_columns(cols);
            const Matrix bt = b.transpose();
            std::vector<Vector> rows;
            for (std::size_t r = 0; r < n; ++r) {
                auto row = exactq::solve(bt, w.row(r));
                rows.push_back(*row);
            }
            const Matrix g = Matrix::from_rows(rows);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    if (g(r, c).get_den() != 1) return;
            if (exactq::det(g) != 1) return;
            GroupElement e = GroupElement::from_matrix(g);
            for (const auto& v : minimal_vectors)
                if (find_line(minimal_vectors, e.apply(v)) == npos) return;
            out.push_back(std::move(e));
            return;
        }
        const std::size_t src = basis[k];
        for (std::size_t j = 0; j < m; ++j) {
            if (taken[j] || pairing[j][j] != pairing[src][src]) continue;
            for (int s : {1, -1}) {
                bool ok = true;
                for (std::size_t l = 0; l < k && ok; ++l)
                    ok = s * sign[l] * pairing[j][image[l]] == pairing[src][basis[l]];
                if (!ok) continue;
                image[k] = j;
                sign[k] = s;
                taken[j] = true;
                extend(k + 1);
                taken[j] = false;
            }
        }
    };
    extend(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<GroupElement> stabilizer(const Tile& tile)
{
    return form_automorphisms(tile.form.gram, tile.form.minimal_vectors);
}

}  // namespace shc::voronoi
