#pragma once

#include "robustpricing/robust_eval.hpp"
#include "robustpricing/simplex.hpp"

#include <functional>
#include <iosfwd>

namespace robustpricing {

/// Ordered price grid over the support with a membership mask for the
/// feasible optimal-price set S(I).
struct GridPartition {
    std::vector<double> points;
    std::vector<bool> certified;
};

/// Geometric price grid augmented with every knot of the information set and
/// any extra points, then certified pointwise. The number of geometric
/// segments is M+1 rounded up to a power of two, so the grid for 2M refines
/// the grid for M exactly; for M = 2^k - 1 the grid has exactly M+2 points.
GridPartition build_grid(const InformationSet& info, DistributionClass cls, std::size_t m);
GridPartition build_grid(const InformationSet& info, DistributionClass cls, std::size_t m,
                         const std::vector<double>& extra_points);

/// Optional restriction on which grid cells contribute constraints; receives
/// the cell's left endpoint a_i. Used for gradient-sign and unimodal variants.
using CellFilter = std::function<bool(double)>;

/// Discretized lower-bound LP: maximize lambda subject to, per certified cell,
///   lambda * opt(F(. | a_{i+1}-, I)) - sum_j min_r Rev(a_j | F(. | r, I)) psi_j <= 0
/// with psi on the simplex and lambda in [0, 1]. Nature is sampled on a fixed
/// fine ladder; each cell's row takes the per-atom minimum revenue and the
/// maximum opt over the certified samples it contains (the maximum sits at the
/// right limit a_{i+1}-, where opt is largest), so the row holds for every
/// certified candidate inside the cell and lambda* is a true lower bound.
struct LpProblem {
    std::vector<double> atoms;                 // grid prices a_j (psi support)
    std::vector<std::size_t> cell_of_row;      // constraint row -> cell index
    std::vector<std::vector<double>> revenue;  // row r: Rev(a_j | F_{cell r})
    std::vector<double> opt_coeff;             // row r: lambda coefficient
    bool no_certified_cells = false;
};

LpProblem build_lp(const InformationSet& info, DistributionClass cls,
                   const GridPartition& grid, const CellFilter& filter = {});

struct LpSolution {
    double lambda_star = 0.0;
    std::vector<double> psi; // one weight per grid atom
    SolveStatus status = SolveStatus::NumericalFailure;
    std::size_t iterations = 0;
    double max_constraint_residual = 0.0;
};

/// Solve with the bundled two-phase simplex. Optimal status implies every
/// constraint is satisfied to 1e-8.
LpSolution solve_lp(const LpProblem& lp);

/// Plain-text tabular dump (objective row then constraint rows) for checking
/// against external solvers.
void write_lp_dump(const LpProblem& lp, std::ostream& os);

struct MaximinResult {
    double lambda_star = 0.0;
    PricingMechanism mechanism;
    LpSolution solution;
    GridPartition grid;
};

/// build_grid -> build_lp -> solve_lp, with psi renormalized to sum exactly 1
/// (slack assigned to the best observed knot's atom). lambda_star is a lower
/// bound on the maximin ratio up to solver tolerance and the ladder sampling
/// resolution; it is conservative by roughly the grid cell width times the
/// local envelope variation, vanishing as M grows, and never decreases when M
/// doubles or when a consistent observation is added.
MaximinResult maximin_lower_bound(const InformationSet& info, DistributionClass cls,
                                  std::size_t m, const CellFilter& filter = {});
MaximinResult maximin_lower_bound(const InformationSet& info, DistributionClass cls,
                                  std::size_t m, const std::vector<double>& extra_points,
                                  const CellFilter& filter);

} // namespace robustpricing
