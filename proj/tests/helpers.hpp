#pragma once

#include "robustpricing/experiments.hpp"

#include <random>

namespace rp = robustpricing;

namespace testutil {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

// Fig. 1 dataset
inline rp::InformationSet fig1() {
    return rp::InformationSet(rp::Bounds(0.0, 1.0), {{0.47, 0.25},
                                                     {0.70, 0.055},
                                                     {0.89, 0.017},
                                                     {0.98, 0.006}});
}

// Random regular-feasible set: sorted interior prices plus an increasing
// gamma-inverse slope sequence integrated into rates.
inline rp::InformationSet random_regular_set(std::mt19937_64& rng, std::size_t n_interior,
                                             rp::Bounds bounds = rp::Bounds(1.0, 100.0)) {
    std::vector<double> prices;
    for (std::size_t i = 0; i < n_interior; ++i)
        prices.push_back(uniform(rng, bounds.v_lo * 1.001, bounds.v_hi * 0.999));
    std::sort(prices.begin(), prices.end());

    std::vector<rp::PricePoint> pts;
    double slope = uniform(rng, 0.01, 0.5);
    double u = 0.0;
    double prev_p = bounds.v_lo;
    for (double p : prices) {
        if (p - prev_p < 1e-6 * bounds.range()) continue;
        u += slope * (p - prev_p);
        pts.push_back({p, rp::gamma(u)});
        prev_p = p;
        slope *= uniform(rng, 1.0, 3.0);
    }
    return rp::InformationSet(bounds, std::move(pts));
}

// Random general-feasible set: sorted prices, non-increasing rates.
inline rp::InformationSet random_general_set(std::mt19937_64& rng, std::size_t n_interior,
                                             rp::Bounds bounds = rp::Bounds(1.0, 100.0)) {
    std::vector<double> prices;
    for (std::size_t i = 0; i < n_interior; ++i)
        prices.push_back(uniform(rng, bounds.v_lo * 1.001, bounds.v_hi * 0.999));
    std::sort(prices.begin(), prices.end());

    std::vector<rp::PricePoint> pts;
    double q = 1.0;
    double prev_p = bounds.v_lo;
    for (double p : prices) {
        if (p - prev_p < 1e-6 * bounds.range()) continue;
        q *= uniform(rng, 0.2, 0.999);
        pts.push_back({p, q});
        prev_p = p;
    }
    return rp::InformationSet(bounds, std::move(pts));
}

inline rp::InformationSet random_set(std::mt19937_64& rng, rp::DistributionClass cls,
                                     std::size_t n_interior,
                                     rp::Bounds bounds = rp::Bounds(1.0, 100.0)) {
    return cls == rp::DistributionClass::Regular ? random_regular_set(rng, n_interior, bounds)
                                                 : random_general_set(rng, n_interior, bounds);
}

// Random mechanism supported on uniform-random prices.
inline rp::PricingMechanism random_mechanism(std::mt19937_64& rng, std::size_t atoms,
                                             const rp::Bounds& bounds) {
    rp::PricingMechanism mech;
    double total = 0.0;
    for (std::size_t i = 0; i < atoms; ++i) {
        const double w = uniform(rng, 0.05, 1.0);
        mech.atoms.push_back({uniform(rng, bounds.v_lo, bounds.v_hi), w});
        total += w;
    }
    for (auto& a : mech.atoms) a.rate /= total;
    return mech;
}

} // namespace testutil
