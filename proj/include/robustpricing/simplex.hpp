#pragma once

#include <vector>

namespace robustpricing {

/// Dense LP in standard inequality/equality form over nonnegative variables:
///
///   maximize c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
///
/// Rows are stored dense; sizes up to a few thousand variables/rows.
struct DenseLp {
    std::size_t num_vars = 0;
    std::vector<double> objective;            // size num_vars
    std::vector<std::vector<double>> a_ub;    // each row size num_vars
    std::vector<double> b_ub;
    std::vector<std::vector<double>> a_eq;
    std::vector<double> b_eq;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

struct SimplexResult {
    SolveStatus status = SolveStatus::NumericalFailure;
    double objective = 0.0;
    std::vector<double> x;
    std::size_t iterations = 0;
    double dual_infeasibility = 0.0; // max violation of reduced-cost optimality
};

/// Two-phase primal simplex on the full dense tableau. Deterministic: Dantzig
/// pricing with a switch to Bland's rule after a bounded number of degenerate
/// steps, smallest-index tie-breaking in the ratio test.
SimplexResult solve_simplex(const DenseLp& lp);

} // namespace robustpricing
