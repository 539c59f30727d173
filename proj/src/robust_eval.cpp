#include "robustpricing/robust_eval.hpp"

#include <algorithm>
#include <cmath>

namespace robustpricing {

namespace {
constexpr double kDominanceTol = 1e-12;

// Candidate prices for Nature's line search: grid points, knots, mechanism
// atoms, and a probe just below each knot/atom (revenue jumps at those).
std::vector<double> search_points(const PricingMechanism& mech, const InformationSet& info,
                                  const std::vector<double>& grid) {
    const Bounds& b = info.bounds();
    const double delta = 1e-9 * b.range();
    std::vector<double> pts = grid;
    auto add = [&](double x) {
        if (x >= b.v_lo && x <= b.v_hi) pts.push_back(x);
    };
    for (const auto& k : info.points()) {
        add(k.price);
        add(k.price - delta);
    }
    for (const auto& a : mech.atoms) {
        add(a.price);
        add(a.price - delta);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

template <typename Fold>
WorstCaseResult scan_nature(const PricingMechanism& mech, const InformationSet& info,
                            DistributionClass cls, const std::vector<double>& grid,
                            Fold&& fold) {
    validate_mechanism(mech);
    if (!is_feasible(info, cls))
        throw std::invalid_argument("worst_case scan: infeasible information set");
    const auto upper = upper_envelope(info, cls);
    const double max_pq = info.max_knot_revenue();

    WorstCaseResult best;
    bool found = false;
    for (double r : search_points(mech, info, grid)) {
        const auto cert = certify_r_star(r, info, cls, upper);
        if (!cert.member()) continue;
        const double opt = std::max(max_pq, r * cert.q_star);
        if (!(opt > 0.0)) continue;
        const auto wc = lower_envelope(info.with_point(r, cert.q_star), cls);
        const double rev = expected_revenue(mech, wc);
        const double val = fold(rev, opt);
        if (!found || val < best.value) {
            best = {val, r};
            found = true;
        }
    }
    if (!found)
        throw std::runtime_error("worst_case scan: no certified optimal price on the grid");
    return best;
}

} // namespace

void validate_mechanism(const PricingMechanism& mech) {
    if (mech.atoms.empty())
        throw std::invalid_argument("mechanism: no atoms");
    double total = 0.0;
    for (const auto& a : mech.atoms) {
        if (a.rate < 0.0)
            throw std::invalid_argument("mechanism: negative weight");
        total += a.rate;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("mechanism: weights must sum to 1");
}

Certificate certify_r_star(double r_star, const InformationSet& info, DistributionClass cls,
                           const PiecewiseCcdf& upper_env) {
    Certificate cert;
    cert.r_star = r_star;
    cert.q_star = upper_left_limit(info, upper_env, r_star);
    try {
        cert.extended_feasible = is_feasible(info.with_point(r_star, cert.q_star), cls);
    } catch (const std::invalid_argument&) {
        cert.extended_feasible = false;
    }
    cert.dominance = r_star * cert.q_star >= info.max_knot_revenue() - kDominanceTol;
    return cert;
}

Certificate certify_r_star(double r_star, const InformationSet& info, DistributionClass cls) {
    return certify_r_star(r_star, info, cls, upper_envelope(info, cls));
}

double expected_revenue(const PricingMechanism& mech, const PiecewiseCcdf& ccdf) {
    double total = 0.0;
    for (const auto& a : mech.atoms) total += a.rate * revenue(ccdf, a.price);
    return total;
}

WorstCaseResult worst_case_ratio(const PricingMechanism& mech, const InformationSet& info,
                                 DistributionClass cls, const std::vector<double>& grid) {
    return scan_nature(mech, info, cls, grid,
                       [](double rev, double opt) { return rev / opt; });
}

WorstCaseResult worst_case_lambda_regret(const PricingMechanism& mech,
                                         const InformationSet& info, DistributionClass cls,
                                         double lambda, const std::vector<double>& grid) {
    if (lambda < 0.0 || lambda > 1.0)
        throw std::domain_error("lambda must lie in [0, 1]");
    // regret is maximized by Nature; reuse the minimizing scan on the negation
    auto res = scan_nature(mech, info, cls, grid, [lambda](double rev, double opt) {
        return -(lambda * opt - rev);
    });
    return {-res.value, res.r_star};
}

} // namespace robustpricing
