#ifndef TSPGAP_LP_SIMPLEX_HPP
#define TSPGAP_LP_SIMPLEX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tspgap::lp
{

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { less_equal, equal, greater_equal };
enum class Sense { minimize, maximize };
enum class LpStatus { optimal, infeasible, unbounded };

struct Row {
    std::vector<double> coeffs;
    Relation relation = Relation::equal;
    double rhs = 0.0;
};

/// Dense linear program with per-variable bounds. Variables default to [0, +inf).
struct LinearProgram {
    Sense sense = Sense::minimize;
    std::vector<double> objective;
    std::vector<Row> rows;
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t add_variable(double cost, double lo = 0.0, double hi = kInfinity)
    {
        objective.push_back(cost);
        lower.push_back(lo);
        upper.push_back(hi);
        for (auto& r : rows) r.coeffs.push_back(0.0);
        return objective.size() - 1;
    }

    void add_row(std::vector<double> coeffs, Relation rel, double rhs)
    {
        rows.push_back(Row{std::move(coeffs), rel, rhs});
    }

    [[nodiscard]] std::size_t num_vars() const { return objective.size(); }

    void validate() const
    {
        const auto n = objective.size();
        if (lower.size() != n || upper.size() != n) throw std::invalid_argument("bound vectors have wrong width");
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(objective[j])) throw std::invalid_argument("non-finite objective coefficient");
            if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j]) {
                throw std::invalid_argument("variable " + std::to_string(j) + " has lo > hi");
            }
            if (lower[j] == kInfinity || upper[j] == -kInfinity) throw std::invalid_argument("empty variable range");
        }
        for (const auto& r : rows) {
            if (r.coeffs.size() != n) throw std::invalid_argument("row width differs from objective width");
            if (!std::isfinite(r.rhs)) throw std::invalid_argument("non-finite right-hand side");
            for (double a : r.coeffs) {
                if (!std::isfinite(a)) throw std::invalid_argument("non-finite row coefficient");
            }
        }
    }
};

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> values;
    double objective_value = 0.0;
    std::size_t pivots = 0;
};

/// Raised when pivoting exceeds the iteration cap.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

namespace detail
{

// Bounded-variable primal simplex on a dense tableau. Phase one minimises the
// sum of artificials; Dantzig pricing switches to Bland's rule after
// kBlandAfter pivots so degenerate cycling cannot persist.
class BoundedSimplex
{
public:
    static constexpr std::size_t kBlandAfter = 1000;
    static constexpr double kPivotTol = 1e-9;
    static constexpr double kCostTol = 1e-9;
    static constexpr double kFeasTol = 1e-9;

    explicit BoundedSimplex(const LinearProgram& lp) : lp_(lp)
    {
        m_ = lp.rows.size();
        n_struct_ = lp.num_vars();
        for (const auto& r : lp.rows) {
            if (r.relation != Relation::equal) ++n_slack_;
        }
        cols_ = n_struct_ + n_slack_ + m_;
        cap_ = 50 * (m_ + n_struct_);
        if (cap_ < 50) cap_ = 50;

        lo_.assign(cols_, 0.0);
        hi_.assign(cols_, kInfinity);
        x_.assign(cols_, 0.0);
        for (std::size_t j = 0; j < n_struct_; ++j) {
            lo_[j] = lp.lower[j];
            hi_[j] = lp.upper[j];
            x_[j] = std::isfinite(lo_[j]) ? lo_[j] : (std::isfinite(hi_[j]) ? hi_[j] : 0.0);
        }

        a_.assign(m_ * cols_, 0.0);
        rhs_.assign(m_, 0.0);
        std::size_t slack = n_struct_;
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& r = lp.rows[i];
            for (std::size_t j = 0; j < n_struct_; ++j) at(a_, i, j) = r.coeffs[j];
            if (r.relation == Relation::less_equal) at(a_, i, slack++) = 1.0;
            if (r.relation == Relation::greater_equal) at(a_, i, slack++) = -1.0;
            rhs_[i] = r.rhs;
            double resid = r.rhs;
            for (std::size_t j = 0; j < n_struct_; ++j) resid -= r.coeffs[j] * x_[j];
            if (resid < 0.0) {
                for (std::size_t j = 0; j < cols_; ++j) at(a_, i, j) = -at(a_, i, j);
                rhs_[i] = -rhs_[i];
            }
            at(a_, i, n_struct_ + n_slack_ + i) = 1.0;
        }
        tab_ = a_;
        basis_.resize(m_);
        is_basic_.assign(cols_, 0);
        beta_.assign(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            basis_[i] = n_struct_ + n_slack_ + i;
            is_basic_[basis_[i]] = 1;
            double v = rhs_[i];
            for (std::size_t j = 0; j < n_struct_; ++j) v -= at(a_, i, j) * x_[j];
            beta_[i] = v;
        }
    }

    LpSolution run()
    {
        LpSolution sol;

        // Phase one.
        std::vector<double> cost(cols_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) cost[artificial(i)] = 1.0;
        if (iterate(cost) == Outcome::unbounded) throw NumericalError("phase one reported unbounded");
        double infeas = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= n_struct_ + n_slack_) infeas += beta_[i];
        }
        double scale = 1.0;
        for (double b : rhs_) scale = std::max(scale, std::abs(b));
        if (infeas > 1e-7 * scale) {
            sol.status = LpStatus::infeasible;
            sol.pivots = pivots_;
            return sol;
        }
        drive_out_artificials();
        for (std::size_t i = 0; i < m_; ++i) {
            lo_[artificial(i)] = 0.0;
            hi_[artificial(i)] = 0.0;
            if (!is_basic_[artificial(i)]) x_[artificial(i)] = 0.0;
        }

        // Phase two.
        std::fill(cost.begin(), cost.end(), 0.0);
        const double sign = lp_.sense == Sense::maximize ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n_struct_; ++j) cost[j] = sign * lp_.objective[j];
        const auto outcome = iterate(cost);
        sol.pivots = pivots_;
        if (outcome == Outcome::unbounded) {
            sol.status = LpStatus::unbounded;
            return sol;
        }
        refine_basic_values();
        sol.status = LpStatus::optimal;
        sol.values.resize(n_struct_);
        for (std::size_t j = 0; j < n_struct_; ++j) {
            double v = x_[j];
            if (v < lo_[j]) v = lo_[j];
            if (v > hi_[j]) v = hi_[j];
            sol.values[j] = v;
        }
        sol.objective_value = 0.0;
        for (std::size_t j = 0; j < n_struct_; ++j) sol.objective_value += lp_.objective[j] * sol.values[j];
        return sol;
    }

private:
    enum class Outcome { optimal, unbounded };

    double& at(std::vector<double>& m, std::size_t i, std::size_t j) { return m[i * cols_ + j]; }
    [[nodiscard]] double at(const std::vector<double>& m, std::size_t i, std::size_t j) const
    {
        return m[i * cols_ + j];
    }
    [[nodiscard]] std::size_t artificial(std::size_t i) const { return n_struct_ + n_slack_ + i; }

    Outcome iterate(const std::vector<double>& cost)
    {
        // Reduced costs d_j = c_j - c_B^T T_j.
        std::vector<double> d(cost);
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = cost[basis_[i]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < cols_; ++j) d[j] -= cb * at(tab_, i, j);
        }
        for (;;) {
            const bool bland = pivots_ >= kBlandAfter;
            std::size_t q = cols_;
            double dir = 0.0;
            double best = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (is_basic_[j] || lo_[j] == hi_[j]) continue;
                double s = 0.0;
                const bool at_lo = x_[j] <= lo_[j];
                const bool at_hi = x_[j] >= hi_[j];
                if (d[j] < -kCostTol && !at_hi) s = 1.0;
                if (d[j] > kCostTol && !at_lo) s = -1.0;
                if (s == 0.0) continue;
                if (bland) {
                    q = j;
                    dir = s;
                    break;
                }
                if (std::abs(d[j]) > best) {
                    best = std::abs(d[j]);
                    q = j;
                    dir = s;
                }
            }
            if (q == cols_) return Outcome::optimal;
            if (++pivots_ > cap_) {
                throw NumericalError("simplex exceeded iteration cap of " + std::to_string(cap_) + " pivots");
            }

            // Ratio test.
            double t = kInfinity;
            std::size_t leave = m_;
            bool leave_to_hi = false;
            if (std::isfinite(lo_[q]) && std::isfinite(hi_[q])) t = hi_[q] - lo_[q];
            for (std::size_t i = 0; i < m_; ++i) {
                const double alpha = at(tab_, i, q);
                if (std::abs(alpha) <= kPivotTol) continue;
                const double rate = -dir * alpha;
                const std::size_t b = basis_[i];
                double ti = kInfinity;
                bool to_hi = false;
                if (rate < 0.0 && std::isfinite(lo_[b])) {
                    ti = (beta_[i] - lo_[b]) / -rate;
                } else if (rate > 0.0 && std::isfinite(hi_[b])) {
                    ti = (hi_[b] - beta_[i]) / rate;
                    to_hi = true;
                }
                if (ti < 0.0) ti = 0.0;
                bool take = false;
                if (ti < t - 1e-12) {
                    take = true;
                } else if (ti <= t + 1e-12 && leave < m_) {
                    if (bland) {
                        take = b < basis_[leave];
                    } else {
                        take = std::abs(alpha) > std::abs(at(tab_, leave, q));
                    }
                }
                if (take) {
                    t = ti;
                    leave = i;
                    leave_to_hi = to_hi;
                }
            }
            if (!std::isfinite(t)) return Outcome::unbounded;

            x_[q] += dir * t;
            for (std::size_t i = 0; i < m_; ++i) beta_[i] -= dir * t * at(tab_, i, q);

            if (leave == m_) {
                // Bound flip of the entering variable.
                x_[q] = dir > 0 ? hi_[q] : lo_[q];
                continue;
            }
            const std::size_t out = basis_[leave];
            x_[out] = leave_to_hi ? hi_[out] : lo_[out];
            pivot(leave, q, d);
            beta_[leave] = x_[q];
        }
    }

    void pivot(std::size_t r, std::size_t q, std::vector<double>& d)
    {
        const double piv = at(tab_, r, q);
        for (std::size_t j = 0; j < cols_; ++j) at(tab_, r, j) /= piv;
        at(tab_, r, q) = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            const double f = at(tab_, i, q);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols_; ++j) at(tab_, i, j) -= f * at(tab_, r, j);
            at(tab_, i, q) = 0.0;
        }
        const double fd = d[q];
        if (fd != 0.0) {
            for (std::size_t j = 0; j < cols_; ++j) d[j] -= fd * at(tab_, r, j);
            d[q] = 0.0;
        }
        is_basic_[basis_[r]] = 0;
        basis_[r] = q;
        is_basic_[q] = 1;
    }

    void drive_out_artificials()
    {
        std::vector<double> dummy(cols_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_struct_ + n_slack_) continue;
            std::size_t best = cols_;
            double mag = kPivotTol;
            for (std::size_t j = 0; j < n_struct_ + n_slack_; ++j) {
                if (is_basic_[j]) continue;
                if (std::abs(at(tab_, i, j)) > mag) {
                    mag = std::abs(at(tab_, i, j));
                    best = j;
                }
            }
            if (best == cols_) continue; // redundant row; artificial stays basic at zero
            const std::size_t out = basis_[i];
            x_[out] = 0.0;
            pivot(i, best, dummy);
            beta_[i] = x_[best];
        }
    }

    // Recompute basic values from the original rows: B x_B = b - N x_N.
    void refine_basic_values()
    {
        if (m_ == 0) return;
        std::vector<double> mat(m_ * m_);
        std::vector<double> r(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            double v = rhs_[i];
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!is_basic_[j]) v -= at(a_, i, j) * x_[j];
            }
            r[i] = v;
            for (std::size_t k = 0; k < m_; ++k) mat[i * m_ + k] = at(a_, i, basis_[k]);
        }
        // Gaussian elimination with partial pivoting.
        std::vector<std::size_t> perm(m_);
        for (std::size_t i = 0; i < m_; ++i) perm[i] = i;
        for (std::size_t c = 0; c < m_; ++c) {
            std::size_t p = c;
            for (std::size_t i = c + 1; i < m_; ++i) {
                if (std::abs(mat[i * m_ + c]) > std::abs(mat[p * m_ + c])) p = i;
            }
            if (std::abs(mat[p * m_ + c]) < 1e-12) return; // keep tableau values
            if (p != c) {
                for (std::size_t k = 0; k < m_; ++k) std::swap(mat[p * m_ + k], mat[c * m_ + k]);
                std::swap(r[p], r[c]);
            }
            for (std::size_t i = c + 1; i < m_; ++i) {
                const double f = mat[i * m_ + c] / mat[c * m_ + c];
                if (f == 0.0) continue;
                for (std::size_t k = c; k < m_; ++k) mat[i * m_ + k] -= f * mat[c * m_ + k];
                r[i] -= f * r[c];
            }
        }
        std::vector<double> xb(m_);
        for (std::size_t c = m_; c-- > 0;) {
            double v = r[c];
            for (std::size_t k = c + 1; k < m_; ++k) v -= mat[c * m_ + k] * xb[k];
            xb[c] = v / mat[c * m_ + c];
        }
        for (std::size_t k = 0; k < m_; ++k) {
            beta_[k] = xb[k];
            x_[basis_[k]] = xb[k];
        }
    }

    const LinearProgram& lp_;
    std::size_t m_ = 0;
    std::size_t n_struct_ = 0;
    std::size_t n_slack_ = 0;
    std::size_t cols_ = 0;
    std::size_t cap_ = 0;
    std::size_t pivots_ = 0;
    std::vector<double> a_;   // original rows (sign-normalised), m x cols
    std::vector<double> tab_; // B^-1 A
    std::vector<double> rhs_;
    std::vector<double> lo_, hi_, x_, beta_;
    std::vector<std::size_t> basis_;
    std::vector<char> is_basic_;
};

} // namespace detail

/// Solves the program to an optimal basic solution or reports infeasible/unbounded.
/// Throws NumericalError when pivoting exceeds 50 * (rows + cols).
inline LpSolution solve_lp(const LinearProgram& lp)
{
    lp.validate();
    detail::BoundedSimplex simplex(lp);
    return simplex.run();
}

} // namespace tspgap::lp

#endif
