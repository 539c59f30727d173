#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace robustpricing {

/// Support interval [v_lo, v_hi] of the buyer value distribution.
struct Bounds {
    double v_lo = 0.0;
    double v_hi = 1.0;

    Bounds() = default;
    Bounds(double lo, double hi) : v_lo(lo), v_hi(hi) {
        if (!(lo >= 0.0) || !(lo < hi) || !std::isfinite(hi))
            throw std::invalid_argument("Bounds: need 0 <= v_lo < v_hi < inf");
    }
    double range() const { return v_hi - v_lo; }
    bool contains(double v) const { return v >= v_lo && v <= v_hi; }

    bool operator==(const Bounds&) const = default;
};

enum class DistributionClass { General, Regular };

/// One observed (price, conversion rate) pair.
struct PricePoint {
    double price = 0.0;
    double rate = 0.0;

    bool operator==(const PricePoint&) const = default;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Gamma transform 1/(1+v). Maps [0, inf] onto [0, 1], with gamma(inf) = 0.
double gamma(double v);

/// Inverse transform 1/q - 1. Maps [0, 1] onto [0, inf], with gamma_inv(0) = inf.
double gamma_inv(double q);

/// Ordered (price, conversion rate) observations with the sentinel endpoints
/// (v_lo, 1) and (v_hi, 0). Construction canonicalizes: sorts by price,
/// inserts missing sentinels, merges duplicate prices carrying equal rates and
/// rejects duplicate prices carrying conflicting rates.
class InformationSet {
  public:
    InformationSet(Bounds bounds, std::vector<PricePoint> observations);

    const Bounds& bounds() const { return bounds_; }
    /// All points including sentinels; strictly increasing prices.
    const std::vector<PricePoint>& points() const { return points_; }
    /// Number of interior observations N (points() has N+2 entries).
    std::size_t interior_count() const { return points_.size() - 2; }

    /// Extend with one more observation and re-canonicalize.
    /// Throws std::invalid_argument if (p, q) conflicts with an existing knot.
    InformationSet with_point(double price, double rate) const;

    /// max_i p_i * q_i over all knots.
    double max_knot_revenue() const;

    bool operator==(const InformationSet&) const = default;

  private:
    Bounds bounds_;
    std::vector<PricePoint> points_;
};

/// Gamma-inverse slope sequence (Gamma^-1(q_{i+1}) - Gamma^-1(q_i)) / (p_{i+1} - p_i)
/// for i = 0..N-1. The final segment down to (v_hi, 0) is excluded.
std::vector<double> regular_slopes(const InformationSet& info);

/// Whether some distribution of the given class matches every observation:
/// General requires non-increasing rates, Regular additionally requires the
/// gamma-inverse slope sequence to be non-decreasing.
bool is_feasible(const InformationSet& info, DistributionClass cls);

} // namespace robustpricing
