#include "robustpricing/core.hpp"

#include <algorithm>
#include <cmath>

namespace robustpricing {

namespace {
constexpr double kRateMergeTol = 1e-12;
constexpr double kSlopeRelTol = 1e-9;
} // namespace

double gamma(double v) {
    if (std::isnan(v) || v < 0.0)
        throw std::domain_error("gamma: argument must be >= 0");
    if (std::isinf(v)) return 0.0;
    return 1.0 / (1.0 + v);
}

double gamma_inv(double q) {
    if (std::isnan(q) || q < 0.0 || q > 1.0)
        throw std::domain_error("gamma_inv: argument must be in [0, 1]");
    if (q == 0.0) return kInf;
    return 1.0 / q - 1.0;
}

InformationSet::InformationSet(Bounds bounds, std::vector<PricePoint> observations)
    : bounds_(bounds) {
    for (const auto& pt : observations) {
        if (!std::isfinite(pt.price) || !bounds_.contains(pt.price))
            throw std::invalid_argument("InformationSet: price outside support bounds");
        if (!(pt.rate >= 0.0) || !(pt.rate <= 1.0))
            throw std::invalid_argument("InformationSet: conversion rate outside [0, 1]");
    }
    observations.push_back({bounds_.v_lo, 1.0});
    observations.push_back({bounds_.v_hi, 0.0});
    std::stable_sort(observations.begin(), observations.end(),
                     [](const PricePoint& a, const PricePoint& b) { return a.price < b.price; });

    points_.reserve(observations.size());
    for (const auto& pt : observations) {
        if (!points_.empty() && pt.price == points_.back().price) {
            if (std::abs(pt.rate - points_.back().rate) > kRateMergeTol)
                throw std::invalid_argument(
                    "InformationSet: duplicate price with conflicting conversion rates");
            continue;
        }
        points_.push_back(pt);
    }
}

InformationSet InformationSet::with_point(double price, double rate) const {
    std::vector<PricePoint> interior(points_.begin() + 1, points_.end() - 1);
    interior.push_back({price, rate});
    return InformationSet(bounds_, std::move(interior));
}

double InformationSet::max_knot_revenue() const {
    double best = 0.0;
    for (const auto& pt : points_) best = std::max(best, pt.price * pt.rate);
    return best;
}

std::vector<double> regular_slopes(const InformationSet& info) {
    const auto& pts = info.points();
    std::vector<double> slopes;
    if (pts.size() < 3) return slopes;
    slopes.reserve(pts.size() - 2);
    for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
        const double g0 = gamma_inv(pts[i].rate);
        const double g1 = gamma_inv(pts[i + 1].rate);
        if (std::isinf(g1)) {
            // interior zero rate: the segment is a vertical drop in gamma space
            slopes.push_back(kInf);
            continue;
        }
        slopes.push_back((g1 - g0) / (pts[i + 1].price - pts[i].price));
    }
    return slopes;
}

bool is_feasible(const InformationSet& info, DistributionClass cls) {
    const auto& pts = info.points();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i + 1].rate > pts[i].rate) return false;
    if (cls == DistributionClass::General) return true;

    const auto slopes = regular_slopes(info);
    for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
        if (std::isinf(slopes[i])) {
            if (!std::isinf(slopes[i + 1])) return false;
            continue;
        }
        const double tol = kSlopeRelTol * std::max(1.0, std::abs(slopes[i]));
        if (slopes[i + 1] < slopes[i] - tol) return false;
    }
    return true;
}

} // namespace robustpricing
