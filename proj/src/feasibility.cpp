#include "shc/exactq.hpp"

#include <stdexcept>

namespace shc::exactq {

namespace {

// Dense phase-I tableau. Artificial columns are not stored: once an
// artificial variable leaves the basis it is never allowed back in.
class PhaseOne {
public:
    PhaseOne(std::vector<Vector> rows, Vector rhs, std::size_t num_cols)
        : rows_(std::move(rows)), rhs_(std::move(rhs)), num_cols_(num_cols), objective_(num_cols)
    {
        const std::size_t m = rows_.size();
        basis_.resize(m);
        for (std::size_t r = 0; r < m; ++r) {
            if (sgn(rhs_[r]) < 0) {
                for (auto& x : rows_[r]) x = -x;
                rhs_[r] = -rhs_[r];
            }
            basis_[r] = num_cols_ + r;
            for (std::size_t c = 0; c < num_cols_; ++c) objective_[c] -= rows_[r][c];
            objective_value_ -= rhs_[r];
        }
    }

    // Returns false when the system is infeasible.
    bool run()
    {
        for (;;) {
            std::size_t entering = num_cols_;
            for (std::size_t c = 0; c < num_cols_; ++c)
                if (sgn(objective_[c]) < 0) {
                    entering = c;
                    break;
                }
            if (entering == num_cols_) break;
            std::size_t leaving = rows_.size();
            Rational best_ratio;
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                if (sgn(rows_[r][entering]) <= 0) continue;
                Rational ratio = rhs_[r] / rows_[r][entering];
                if (leaving == rows_.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[r] < basis_[leaving])) {
                    leaving = r;
                    best_ratio = ratio;
                }
            }
            if (leaving == rows_.size()) break;  // unbounded direction; cannot happen in phase I
            pivot(leaving, entering);
        }
        return sgn(objective_value_) == 0;
    }

    Vector values() const
    {
        Vector x(num_cols_);
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (basis_[r] < num_cols_) x[basis_[r]] = rhs_[r];
        return x;
    }

private:
    void pivot(std::size_t row, std::size_t col)
    {
        const Rational inv = 1 / rows_[row][col];
        std::vector<std::size_t> support;
        for (std::size_t c = 0; c < num_cols_; ++c) {
            if (sgn(rows_[row][c]) == 0) continue;
            rows_[row][c] *= inv;
            support.push_back(c);
        }
        rhs_[row] *= inv;
        auto eliminate = [&](Vector& target, Rational& target_rhs) {
            const Rational f = target[col];
            if (sgn(f) == 0) return;
            for (auto c : support) target[c] -= f * rows_[row][c];
            target_rhs -= f * rhs_[row];
        };
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (r != row) eliminate(rows_[r], rhs_[r]);
        eliminate(objective_, objective_value_);
        basis_[row] = col;
    }

    std::vector<Vector> rows_;
    Vector rhs_;
    std::size_t num_cols_;
    Vector objective_;
    Rational objective_value_;
    std::vector<std::size_t> basis_;
};

}  // namespace

std::optional<Vector> find_feasible_point(const LinearSystem& system)
{
    const std::size_t n = system.num_vars;
    if (system.ge_rows.size() != system.ge_rhs.size() || system.eq_rows.size() != system.eq_rhs.size())
        throw std::invalid_argument("linear system rhs size mismatch");
    std::vector<bool> nonneg = system.nonneg;
    if (nonneg.empty()) nonneg.assign(n, false);
    if (nonneg.size() != n) throw std::invalid_argument("nonneg mask size mismatch");

    // Column layout: one column per original variable, a second (negated)
    // column per free variable, then one surplus column per >= row.
    std::vector<std::size_t> negative_col(n, 0);
    std::size_t cols = n;
    for (std::size_t j = 0; j < n; ++j)
        if (!nonneg[j]) negative_col[j] = cols++;
    const std::size_t surplus_base = cols;
    cols += system.ge_rows.size();

    std::vector<Vector> rows;
    Vector rhs;
    auto add_row = [&](const Vector& a, const Rational& b, std::size_t surplus) {
        if (a.size() != n) throw std::invalid_argument("constraint row size mismatch");
        Vector row(cols);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = a[j];
            if (!nonneg[j]) row[negative_col[j]] = -a[j];
        }
        if (surplus < cols) row[surplus] = -1;
        rows.push_back(std::move(row));
        rhs.push_back(b);
    };
    for (std::size_t i = 0; i < system.ge_rows.size(); ++i)
        add_row(system.ge_rows[i], system.ge_rhs[i], surplus_base + i);
    for (std::size_t i = 0; i < system.eq_rows.size(); ++i) add_row(system.eq_rows[i], system.eq_rhs[i], cols);

    PhaseOne tableau(std::move(rows), std::move(rhs), cols);
    if (!tableau.run()) return std::nullopt;
    const Vector z = tableau.values();
    Vector x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = nonneg[j] ? z[j] : z[j] - z[negative_col[j]];
    return x;
}

}  // namespace shc::exactq
