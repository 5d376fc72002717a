#include "shadow_transport/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shadow_transport/error.hpp"

namespace shadow_transport {

std::string_view to_string(LpStatus s) noexcept {
    switch (s) {
        case LpStatus::Optimal: return "OPTIMAL";
        case LpStatus::Infeasible: return "INFEASIBLE";
        case LpStatus::Unbounded: return "UNBOUNDED";
    }
    return "?";
}

namespace {

constexpr double kPivotEps = 1e-11;

// Tableau rows 0..m-1 are constraints, column `rhs` is the right-hand side.
// Columns: n structural, then one slack per <= row, then one artificial per row.
class Tableau {
public:
    Tableau(const LinearProgram& lp)
        : n_(lp.cost.size()),
          m_eq_(lp.a_eq.size()),
          m_le_(lp.a_le.size()),
          m_(m_eq_ + m_le_),
          art0_(n_ + m_le_),
          cols_(n_ + m_le_ + m_),
          t_(m_, std::vector<double>(cols_ + 1, 0.0)),
          sign_(m_, 1.0),
          basis_(m_),
          active_(m_, true) {
        for (std::size_t i = 0; i < m_; ++i) {
            const bool eq = i < m_eq_;
            const auto& row = eq ? lp.a_eq[i] : lp.a_le[i - m_eq_];
            const double b = eq ? lp.b_eq[i] : lp.b_le[i - m_eq_];
            if (row.size() != n_) throw Error(ErrorCode::InternalInvariant, "LP row has the wrong width");
            std::copy(row.begin(), row.end(), t_[i].begin());
            if (!eq) t_[i][n_ + (i - m_eq_)] = 1.0;
            t_[i][cols_] = b;
            if (b < 0.0) {
                sign_[i] = -1.0;
                for (double& v : t_[i]) v = -v;
            }
            t_[i][art0_ + i] = 1.0;
            basis_[i] = art0_ + i;
        }
    }

    // Runs simplex on objective `obj` (length cols_) over allowed columns.
    // Returns false if unbounded.
    bool optimise(const std::vector<double>& obj, std::size_t allowed_cols) {
        for (;;) {
            // reduced cost d_j = obj_j - obj_B B^{-1} A_j
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < allowed_cols && enter == cols_; ++j) {
                if (is_basic(j)) continue;
                double d = obj[j];
                for (std::size_t i = 0; i < m_; ++i) {
                    if (active_[i]) d -= obj[basis_[i]] * t_[i][j];
                }
                if (d < -1e-10 * (1.0 + std::abs(obj[j]))) enter = j;
            }
            if (enter == cols_) return true;
            std::size_t leave = m_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (!active_[i] || t_[i][enter] <= kPivotEps) continue;
                const double ratio = t_[i][cols_] / t_[i][enter];
                if (ratio < best - 1e-14 || (ratio <= best + 1e-14 && leave < m_ && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
    }

    // After phase one: pivot artificials out of the basis, dropping rows that
    // are linear combinations of the others.
    void expel_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!active_[i] || basis_[i] < art0_) continue;
            std::size_t j = 0;
            while (j < art0_ && (is_basic(j) || std::abs(t_[i][j]) <= 1e-9)) ++j;
            if (j < art0_) {
                pivot(i, j);
            } else {
                active_[i] = false;
            }
        }
    }

    double objective(const std::vector<double>& obj) const {
        double v = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (active_[i]) v += obj[basis_[i]] * t_[i][cols_];
        }
        return v;
    }

    std::vector<double> primal() const {
        std::vector<double> x(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (active_[i] && basis_[i] < n_) x[basis_[i]] = std::max(0.0, t_[i][cols_]);
        }
        return x;
    }

    // y_i = sum_k obj_B(k) (B^{-1})_{k,i}; the artificial columns hold B^{-1}.
    std::vector<double> duals(const std::vector<double>& obj) const {
        std::vector<double> y(m_, 0.0);
        for (std::size_t r = 0; r < m_; ++r) {
            if (!active_[r]) continue;
            double s = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (active_[i]) s += obj[basis_[i]] * t_[i][art0_ + r];
            }
            y[r] = s * sign_[r];
        }
        return y;
    }

    std::size_t structural_and_slack() const { return art0_; }
    std::size_t columns() const { return cols_; }

private:
    bool is_basic(std::size_t j) const {
        for (std::size_t i = 0; i < m_; ++i) {
            if (active_[i] && basis_[i] == j) return true;
        }
        return false;
    }

    void pivot(std::size_t r, std::size_t c) {
        const double p = t_[r][c];
        for (double& v : t_[r]) v /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || !active_[i]) continue;
            const double f = t_[i][c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) t_[i][j] -= f * t_[r][j];
            t_[i][c] = 0.0;
        }
        basis_[r] = c;
    }

    std::size_t n_, m_eq_, m_le_, m_, art0_, cols_;
    std::vector<std::vector<double>> t_;
    std::vector<double> sign_;
    std::vector<std::size_t> basis_;
    std::vector<bool> active_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    if (lp.a_eq.size() != lp.b_eq.size() || lp.a_le.size() != lp.b_le.size()) {
        throw Error(ErrorCode::InternalInvariant, "LP right-hand side size mismatch");
    }
    Tableau tab(lp);
    const std::size_t cols = tab.columns();
    const std::size_t art0 = tab.structural_and_slack();

    std::vector<double> phase1(cols, 0.0);
    std::fill(phase1.begin() + static_cast<std::ptrdiff_t>(art0), phase1.end(), 1.0);
    tab.optimise(phase1, cols);
    double scale = 1.0;
    for (double b : lp.b_eq) scale = std::max(scale, std::abs(b));
    for (double b : lp.b_le) scale = std::max(scale, std::abs(b));

    LpSolution out;
    if (tab.objective(phase1) > 1e-9 * scale) {
        out.status = LpStatus::Infeasible;
        return out;
    }
    tab.expel_artificials();

    std::vector<double> phase2(cols, 0.0);
    std::copy(lp.cost.begin(), lp.cost.end(), phase2.begin());
    if (!tab.optimise(phase2, art0)) {
        out.status = LpStatus::Unbounded;
        return out;
    }
    out.status = LpStatus::Optimal;
    out.x = tab.primal();
    out.objective = 0.0;
    for (std::size_t j = 0; j < lp.cost.size(); ++j) out.objective += lp.cost[j] * out.x[j];

    const std::vector<double> y = tab.duals(phase2);
    out.dual_eq.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(lp.a_eq.size()));
    out.dual_le.assign(y.begin() + static_cast<std::ptrdiff_t>(lp.a_eq.size()), y.end());
    double dual_obj = 0.0;
    for (std::size_t i = 0; i < lp.b_eq.size(); ++i) dual_obj += lp.b_eq[i] * out.dual_eq[i];
    for (std::size_t i = 0; i < lp.b_le.size(); ++i) dual_obj += lp.b_le[i] * out.dual_le[i];
    out.duality_gap = std::abs(out.objective - dual_obj);

    double worst = 0.0;
    for (double v : out.dual_le) worst = std::max(worst, v);
    for (std::size_t j = 0; j < lp.cost.size(); ++j) {
        double r = lp.cost[j];
        for (std::size_t i = 0; i < lp.a_eq.size(); ++i) r -= lp.a_eq[i][j] * out.dual_eq[i];
        for (std::size_t i = 0; i < lp.a_le.size(); ++i) r -= lp.a_le[i][j] * out.dual_le[i];
        worst = std::max(worst, -r);
    }
    out.dual_infeasibility = worst;
    return out;
}

}  // namespace shadow_transport
