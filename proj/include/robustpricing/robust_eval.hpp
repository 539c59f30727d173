#pragma once

#include "robustpricing/envelopes.hpp"

namespace robustpricing {

/// Discrete distribution over posted prices: support points with weights.
struct PricingMechanism {
    std::vector<PricePoint> atoms; // (price, weight)
};

/// Throws std::invalid_argument unless weights are nonnegative and sum to 1
/// within 1e-9.
void validate_mechanism(const PricingMechanism& mech);

/// Membership test for the feasible optimal-price set S(I): r_star belongs
/// iff the set extended with (r_star, U(r_star-)) stays feasible and
/// r_star * U(r_star-) dominates every observed knot revenue.
struct Certificate {
    double r_star = 0.0;
    double q_star = 0.0;
    bool extended_feasible = false;
    bool dominance = false;

    bool member() const { return extended_feasible && dominance; }
};

Certificate certify_r_star(double r_star, const InformationSet& info, DistributionClass cls);

/// Fast path reusing a prebuilt upper envelope of the same information set.
Certificate certify_r_star(double r_star, const InformationSet& info, DistributionClass cls,
                           const PiecewiseCcdf& upper_env);

/// Sum over atoms of weight * Rev(price | ccdf).
double expected_revenue(const PricingMechanism& mech, const PiecewiseCcdf& ccdf);

struct WorstCaseResult {
    double value = 0.0;
    double r_star = 0.0; // Nature's minimizing (resp. maximizing) optimal price
};

/// min over certified candidate prices r of
///   E_mech[Rev(. | F(. | r, I))] / max(max_i p_i q_i, r * U(r-)).
/// Candidates are the given grid points augmented with every knot, every
/// mechanism atom, and left-limit probes just below each of them.
WorstCaseResult worst_case_ratio(const PricingMechanism& mech, const InformationSet& info,
                                 DistributionClass cls, const std::vector<double>& grid);

/// max over certified candidates of lambda * opt - expected revenue.
WorstCaseResult worst_case_lambda_regret(const PricingMechanism& mech,
                                         const InformationSet& info, DistributionClass cls,
                                         double lambda, const std::vector<double>& grid);

} // namespace robustpricing
