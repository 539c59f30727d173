#pragma once

#include "robustpricing/maximin.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace robustpricing {

/// Parametric regular demand curves used to drive simulated experiments.
/// Linear: ccdf clamp(a - b v, 0, 1). Exponential: ccdf min(exp(a - b v), 1).
struct DemandModel {
    enum class Kind { Linear, Exponential };

    Kind kind = Kind::Linear;
    double a = 1.0;
    double b = 1.0;
    Bounds bounds{0.0, 1.0};

    double ccdf(double v) const;
    /// Conversion rate at a posted price: P(v >= p), the left limit of the
    /// ccdf (1 at the lower support edge).
    double conversion_rate(double p) const;
    double revenue_at(double p) const { return p * conversion_rate(p); }
    /// Closed-form optimal posted price within the support bounds.
    double optimal_price() const;
    double optimal_revenue() const { return revenue_at(optimal_price()); }

    /// True when observed rates plus the support sentinels are consistent with
    /// a regular distribution supported on [v_lo, v_hi]: requires full
    /// conversion at the lower edge (exponential models need a >= b v_lo).
    bool supported_within_bounds() const;
};

/// Deterministic sampler per the study protocol: Linear b ~ U[1,5], a ~ U[1,b];
/// Exponential b ~ U[1,5], a ~ U[-0.2, b].
std::vector<DemandModel> sample_demand_models(DemandModel::Kind kind, std::size_t n,
                                              std::uint64_t seed,
                                              Bounds bounds = Bounds(0.0, 1.0));

/// True ratio of a mechanism's expected revenue to the model's optimum.
double model_ratio(const PricingMechanism& mech, const DemandModel& model);

// ---------------------------------------------------------------------------
// Gradient studies (local experimentation)

struct GradientRow {
    double q_eps = 0.0;
    double g_eps = 0.0; // finite-difference revenue gradient at p1
    double lambda_star = 0.0;
    bool feasible = false;
};

/// Maximin value of knowing the conversion rate at p_eps = (1 + eps) p1 in
/// addition to (p1, q1), tabulated over candidate rates q_eps. Rows whose
/// extended set is infeasible are flagged and carry no lambda.
std::vector<GradientRow> gradient_value_study(double p1, double q1, double eps,
                                              const std::vector<double>& q_eps_grid,
                                              DistributionClass cls, const Bounds& bounds,
                                              std::size_t m);

enum class GradientSign { Negative, Positive };

/// Maximin value of knowing only the gradient sign at p1: the single-point LP
/// restricted to constraint cells on the corresponding side of p1.
double gradient_sign_value(double p1, double q1, GradientSign sign, DistributionClass cls,
                           const Bounds& bounds, std::size_t m);

// ---------------------------------------------------------------------------
// Optimal second experiment

struct SecondPriceCell {
    double p2 = 0.0;
    double worst_lambda = 0.0; // min over Nature's feasible q2 responses
    std::size_t q2_evaluated = 0;
};

struct SecondPriceResult {
    double p2_star = 0.0;
    double guaranteed_ratio = 0.0;
    double single_point_lambda = 0.0;
    std::vector<SecondPriceCell> table;
};

/// Seller commits to a second experiment price p2, Nature answers with the
/// worst feasible conversion rate q2; picks the p2 maximizing the resulting
/// guaranteed maximin ratio. q2 candidates are spread geometrically in
/// gamma-inverse space across the feasible envelope band at p2.
SecondPriceResult best_second_price(double p1, double q1, DistributionClass cls,
                                    const Bounds& bounds, std::size_t p2_count,
                                    std::size_t q2_count, std::size_t m);

// ---------------------------------------------------------------------------
// Dynamic pricing with data-driven stopping

struct QueryRecord {
    double price = 0.0;
    double rate = 0.0;
};

struct TernaryResult {
    std::vector<QueryRecord> queries;
    double final_price = 0.0;
    std::size_t rounds = 0;
};

/// Rounds prescribed by the classical stopping rule
/// ceil(log((v_hi - v_lo) / (v_hi eps)) / log(3/2)); each round costs two queries.
std::size_t ternary_budget_rounds(const Bounds& bounds, double eps);
/// The variant with v_lo in the denominator (the bound the guarantee proof
/// actually yields); infinite for v_lo = 0.
std::size_t ternary_budget_rounds_conservative(const Bounds& bounds, double eps);

/// Classical ternary search against a demand oracle, recording every query.
/// max_rounds = 0 runs the standard budget.
TernaryResult ternary_search(const DemandModel& model, double eps,
                             std::size_t max_rounds = 0);

/// One exploration step: queried points plus the updated search bracket.
struct ExplorationStep {
    std::vector<QueryRecord> queries;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

using Explorer = std::function<std::optional<ExplorationStep>()>;

/// Stateful ternary exploration over a demand oracle.
Explorer make_ternary_explorer(const DemandModel& model);

enum class StoppingCriterion { Regular, GeneralUnimodal };

struct MetaResult {
    std::size_t queries_used = 0;
    std::size_t rounds = 0;
    bool reached_threshold = false;
    double lambda_star = 0.0;
    PricingMechanism mechanism;
};

/// Runs the explorer until the maximin lower bound on the accumulated
/// information set reaches 1 - eps (Regular: full LP on the regular class;
/// GeneralUnimodal: general-class LP keeping only cells inside the current
/// bracket). Returns the LP's mechanism; falls back to best-so-far with
/// reached_threshold = false when the query budget runs out.
MetaResult meta_dynamic_pricing(const Explorer& explorer, const InformationSet& initial,
                                StoppingCriterion criterion, double eps, std::size_t m,
                                std::size_t query_budget);

} // namespace robustpricing
