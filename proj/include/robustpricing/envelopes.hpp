#pragma once

#include "robustpricing/core.hpp"

namespace robustpricing {

/// One closed-form ccdf piece between an anchor (s, q_s) and an endpoint
/// (s_end, q_end). GeneralFlat is the step ccdf that is 1 below s and q_end
/// from s on; RegularGammaLinear is gamma(gamma_inv(q_s) + beta (v - s)) with
/// beta the gamma-inverse slope between anchor and endpoint.
struct SegmentCcdf {
    enum class Kind { GeneralFlat, RegularGammaLinear };

    Kind kind = Kind::GeneralFlat;
    double s = 0.0;
    double q_s = 1.0;
    double s_end = 0.0;
    double q_end = 0.0;

    /// Gamma-inverse slope (inf for a terminal drop to rate 0).
    double beta() const;

    /// Closed-form value at v, clamped to [0, 1]. Defined on the whole line so
    /// that gamma-linear pieces can be extrapolated outside [s, s_end).
    double eval(double v) const;

    /// Left limit of the closed form at v (differs from eval only at the flat
    /// segment's step point s).
    double eval_left(double v) const;
};

/// Eq.-style evaluation on the support: value of the segment ccdf at v, with
/// the convention that the ccdf is 0 at v_hi. Throws outside [v_lo, v_hi].
double segment_ccdf(const SegmentCcdf& seg, double v, const Bounds& bounds);

/// Piecewise ccdf over the knot grid of an information set. Each knot interval
/// [p_i, p_{i+1}) carries one or two closed-form pieces; the value on the
/// interval is their pointwise min clamped to [0, 1].
class PiecewiseCcdf {
  public:
    struct Interval {
        std::vector<SegmentCcdf> parts;
    };

    PiecewiseCcdf(Bounds bounds, std::vector<PricePoint> knots,
                  std::vector<Interval> intervals);

    const Bounds& bounds() const { return bounds_; }
    const std::vector<PricePoint>& knots() const { return knots_; }
    const std::vector<Interval>& intervals() const { return intervals_; }

    /// Right-continuous evaluation F(v >= .): value at v in [v_lo, v_hi],
    /// 0 at v_hi. Throws outside the support.
    double value(double v) const;

    /// Exact left limit at p, i.e. P(v >= p). Equals q_i at every knot of a
    /// lower-envelope-type ccdf. left_limit(v_lo) = 1.
    double left_limit(double p) const;

  private:
    std::size_t interval_index(double v) const;

    Bounds bounds_;
    std::vector<PricePoint> knots_;
    std::vector<Interval> intervals_;
};

/// Pointwise tightest lower bound L on the ccdf of any class member matching
/// the information set. A genuine member of the class itself.
PiecewiseCcdf lower_envelope(const InformationSet& info, DistributionClass cls);

/// Pointwise upper bound U on the ccdf over the ambiguity set.
PiecewiseCcdf upper_envelope(const InformationSet& info, DistributionClass cls);

/// U(r-): the largest conversion rate any class member can attain just below
/// r, using the convention that at a knot the value is the knot rate.
double upper_left_limit(const InformationSet& info, DistributionClass cls, double r);

/// Same, reusing a prebuilt upper envelope of the same information set.
double upper_left_limit(const InformationSet& info, const PiecewiseCcdf& upper_env,
                        double r);

/// Nature's best-response ccdf when r_star is the optimal price: the lower
/// envelope of the information set extended with (r_star, U(r_star-)).
/// Throws std::invalid_argument when the extension is inconsistent.
PiecewiseCcdf worst_case_distribution(double r_star, const InformationSet& info,
                                      DistributionClass cls);

/// p * P(v >= p) under the given ccdf.
double revenue(const PiecewiseCcdf& ccdf, double p);

/// sup_p Rev(p | L(. | info)) = max_i p_i q_i over the knots.
double optimal_revenue_of_envelope(const InformationSet& info, DistributionClass cls);

/// Constant virtual value of a gamma-linear ccdf piece anchored at s with
/// parameters alpha = gamma_inv(q_s) and slope beta: s - (1 + alpha) / beta.
double constant_virtual_value(double alpha, double beta, double s);

} // namespace robustpricing
