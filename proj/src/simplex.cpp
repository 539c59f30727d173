#include "robustpricing/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace robustpricing {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-8;

// Full-tableau simplex working storage. Row-major; width = columns + rhs.
class Tableau {
  public:
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), width_(cols + 1), data_(rows * (cols + 1), 0.0),
          cost_(cols + 1, 0.0), basis_(rows, 0) {}

    double* row(std::size_t i) { return data_.data() + i * width_; }
    const double* row(std::size_t i) const { return data_.data() + i * width_; }
    double& at(std::size_t i, std::size_t j) { return row(i)[j]; }
    double& rhs(std::size_t i) { return row(i)[cols_]; }
    double& cost(std::size_t j) { return cost_[j]; }
    double& cost_rhs() { return cost_[cols_]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t pr, std::size_t pc) {
        double* prow = row(pr);
        const double inv = 1.0 / prow[pc];
        for (std::size_t j = 0; j <= cols_; ++j) prow[j] *= inv;
        prow[pc] = 1.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == pr) continue;
            double* r = row(i);
            const double f = r[pc];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) r[j] -= f * prow[j];
            r[pc] = 0.0;
        }
        const double fc = cost_[pc];
        if (fc != 0.0) {
            for (std::size_t j = 0; j <= cols_; ++j) cost_[j] -= fc * prow[j];
            cost_[pc] = 0.0;
        }
        basis_[pr] = pc;
    }

  private:
    std::size_t rows_, cols_, width_;
    std::vector<double> data_;
    std::vector<double> cost_;
    std::vector<std::size_t> basis_;
};

enum class StepOutcome { Pivoted, Optimal, Unbounded, IterationLimit };

// Minimization: entering column has negative reduced cost.
StepOutcome run_simplex(Tableau& t, const std::vector<bool>& allowed,
                        std::size_t max_iters, std::size_t& iterations) {
    const std::size_t bland_threshold = 2 * (t.rows() + t.cols()) + 64;
    std::size_t degenerate_run = 0;
    for (;;) {
        if (iterations >= max_iters) return StepOutcome::IterationLimit;
        const bool use_bland = degenerate_run > bland_threshold;

        std::size_t pc = t.cols();
        double best = -kCostTol;
        for (std::size_t j = 0; j < t.cols(); ++j) {
            if (!allowed[j]) continue;
            const double c = t.cost(j);
            if (c < best) {
                best = c;
                pc = j;
                if (use_bland) break; // first eligible index
            }
        }
        if (pc == t.cols()) return StepOutcome::Optimal;

        std::size_t pr = t.rows();
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < t.rows(); ++i) {
            const double a = t.row(i)[pc];
            if (a <= kPivotTol) continue;
            const double ratio = t.rhs(i) / a;
            if (ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && (pr == t.rows() || t.basis()[i] < t.basis()[pr]))) {
                best_ratio = ratio;
                pr = i;
            }
        }
        if (pr == t.rows()) return StepOutcome::Unbounded;

        degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
        t.pivot(pr, pc);
        ++iterations;
    }
}

} // namespace

SimplexResult solve_simplex(const DenseLp& lp) {
    const std::size_t n = lp.num_vars;
    const std::size_t m_ub = lp.a_ub.size();
    const std::size_t m_eq = lp.a_eq.size();
    const std::size_t m = m_ub + m_eq;
    if (lp.objective.size() != n || lp.b_ub.size() != m_ub || lp.b_eq.size() != m_eq)
        throw std::invalid_argument("solve_simplex: inconsistent problem sizes");

    // Count artificials: flipped inequality rows (negative rhs) and all equalities.
    std::vector<bool> needs_artificial(m, false);
    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m_ub; ++i)
        if (lp.b_ub[i] < 0.0) needs_artificial[i] = true;
    for (std::size_t i = 0; i < m_eq; ++i) needs_artificial[m_ub + i] = true;
    for (std::size_t i = 0; i < m; ++i) n_art += needs_artificial[i];

    const std::size_t cols = n + m_ub + n_art;
    Tableau t(m, cols);
    std::vector<bool> allowed(cols, true);

    std::size_t art = n + m_ub;
    for (std::size_t i = 0; i < m; ++i) {
        const bool is_ub = i < m_ub;
        const auto& arow = is_ub ? lp.a_ub[i] : lp.a_eq[i - m_ub];
        if (arow.size() != n)
            throw std::invalid_argument("solve_simplex: row width mismatch");
        double b = is_ub ? lp.b_ub[i] : lp.b_eq[i - m_ub];
        const double sign = b < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign * arow[j];
        t.rhs(i) = sign * b;
        if (is_ub) t.at(i, n + i) = sign; // slack
        if (needs_artificial[i]) {
            t.at(i, art) = 1.0;
            t.basis()[i] = art++;
        } else {
            t.basis()[i] = n + i;
        }
    }

    SimplexResult result;
    const std::size_t max_iters = 200 * (m + n) + 10000;

    // Phase 1: minimize the sum of artificials.
    if (n_art > 0) {
        for (std::size_t j = n + m_ub; j < cols; ++j) t.cost(j) = 1.0;
        // price out the basic artificials
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis()[i] < n + m_ub) continue;
            for (std::size_t j = 0; j <= cols; ++j) t.cost(j) -= t.row(i)[j];
        }
        auto outcome = run_simplex(t, allowed, max_iters, result.iterations);
        if (outcome == StepOutcome::IterationLimit) {
            result.status = SolveStatus::NumericalFailure;
            return result;
        }
        if (-t.cost_rhs() > kFeasTol) {
            result.status = SolveStatus::Infeasible;
            return result;
        }
        // pivot any lingering artificial out of the basis
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis()[i] < n + m_ub) continue;
            std::size_t pc = cols;
            for (std::size_t j = 0; j < n + m_ub; ++j)
                if (std::abs(t.row(i)[j]) > kPivotTol) {
                    pc = j;
                    break;
                }
            if (pc < cols) t.pivot(i, pc);
            // else: redundant row, its basic artificial stays at value ~0
        }
        for (std::size_t j = n + m_ub; j < cols; ++j) allowed[j] = false;
    }

    // Phase 2: minimize -objective.
    for (std::size_t j = 0; j <= cols; ++j) t.cost(j) = 0.0;
    for (std::size_t j = 0; j < n; ++j) t.cost(j) = -lp.objective[j];
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t bj = t.basis()[i];
        const double c = t.cost(bj);
        if (c == 0.0) continue;
        for (std::size_t j = 0; j <= cols; ++j) t.cost(j) -= c * t.row(i)[j];
        t.cost(bj) = 0.0;
    }
    auto outcome = run_simplex(t, allowed, max_iters, result.iterations);
    if (outcome == StepOutcome::IterationLimit) {
        result.status = SolveStatus::NumericalFailure;
        return result;
    }
    if (outcome == StepOutcome::Unbounded) {
        result.status = SolveStatus::Unbounded;
        return result;
    }

    result.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis()[i] < n) result.x[t.basis()[i]] = t.rhs(i);
    result.objective = t.cost_rhs(); // cost row tracks -z with flipped sign accumulated
    double obj = 0.0;
    for (std::size_t j = 0; j < n; ++j) obj += lp.objective[j] * result.x[j];
    result.objective = obj;
    double dual_inf = 0.0;
    for (std::size_t j = 0; j < cols; ++j)
        if (allowed[j]) dual_inf = std::max(dual_inf, -t.cost(j));
    result.dual_infeasibility = dual_inf;
    result.status = SolveStatus::Optimal;
    return result;
}

} // namespace robustpricing
