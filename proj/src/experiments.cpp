#include "robustpricing/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

namespace robustpricing {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// uniform in [lo, hi) from the top 53 bits; keeps streams identical across
// platforms, unlike std::uniform_real_distribution
double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

} // namespace

double DemandModel::ccdf(double v) const {
    switch (kind) {
        case Kind::Linear: return clamp01(a - b * v);
        case Kind::Exponential: return std::min(1.0, std::exp(a - b * v));
    }
    throw std::logic_error("DemandModel: bad kind");
}

double DemandModel::conversion_rate(double p) const {
    // left limit: everyone buys at the lower support edge
    if (p <= bounds.v_lo) return 1.0;
    return ccdf(p);
}

double DemandModel::optimal_price() const {
    std::vector<double> candidates = {bounds.v_lo, bounds.v_hi};
    if (kind == Kind::Linear) {
        candidates.push_back(a / (2.0 * b)); // unconstrained vertex
        candidates.push_back((a - 1.0) / b); // kink where the clamp releases
    } else {
        candidates.push_back(1.0 / b);
        candidates.push_back(a / b); // kink where the ccdf clamp releases
    }
    double best_p = bounds.v_lo;
    double best_rev = -1.0;
    for (double c : candidates) {
        const double p = std::min(bounds.v_hi, std::max(bounds.v_lo, c));
        const double rev = revenue_at(p);
        if (rev > best_rev) {
            best_rev = rev;
            best_p = p;
        }
    }
    return best_p;
}

bool DemandModel::supported_within_bounds() const {
    // full conversion at the lower edge, i.e. no mass below v_lo
    if (kind == Kind::Linear) return a - b * bounds.v_lo >= 1.0;
    return a >= b * bounds.v_lo;
}

std::vector<DemandModel> sample_demand_models(DemandModel::Kind kind, std::size_t n,
                                              std::uint64_t seed, Bounds bounds) {
    std::mt19937_64 rng(seed);
    std::vector<DemandModel> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        DemandModel m;
        m.kind = kind;
        m.bounds = bounds;
        m.b = uniform(rng, 1.0, 5.0);
        m.a = kind == DemandModel::Kind::Linear ? uniform(rng, 1.0, m.b)
                                                : uniform(rng, -0.2, m.b);
        out.push_back(m);
    }
    return out;
}

double model_ratio(const PricingMechanism& mech, const DemandModel& model) {
    validate_mechanism(mech);
    const double opt = model.optimal_revenue();
    if (!(opt > 0.0)) throw std::domain_error("model_ratio: degenerate demand model");
    double rev = 0.0;
    for (const auto& atom : mech.atoms) rev += atom.rate * model.revenue_at(atom.price);
    return rev / opt;
}

// ---------------------------------------------------------------------------

std::vector<GradientRow> gradient_value_study(double p1, double q1, double eps,
                                              const std::vector<double>& q_eps_grid,
                                              DistributionClass cls, const Bounds& bounds,
                                              std::size_t m) {
    if (!(eps > 0.0)) throw std::domain_error("gradient_value_study: eps must be > 0");
    const double p_eps = (1.0 + eps) * p1;
    if (!bounds.contains(p1) || !bounds.contains(p_eps))
        throw std::domain_error("gradient_value_study: prices outside bounds");

    std::vector<GradientRow> rows;
    rows.reserve(q_eps_grid.size());
    for (double q_eps : q_eps_grid) {
        GradientRow row;
        row.q_eps = q_eps;
        row.g_eps = (p_eps * q_eps - p1 * q1) / (p_eps - p1);
        try {
            InformationSet info(bounds, {{p1, q1}, {p_eps, q_eps}});
            if (is_feasible(info, cls)) {
                const auto res = maximin_lower_bound(info, cls, m);
                if (res.solution.status == SolveStatus::Optimal) {
                    row.feasible = true;
                    row.lambda_star = res.lambda_star;
                }
            }
        } catch (const std::invalid_argument&) {
            // conflicting rates at a duplicated price: leave the row flagged
        }
        rows.push_back(row);
    }
    return rows;
}

double gradient_sign_value(double p1, double q1, GradientSign sign, DistributionClass cls,
                           const Bounds& bounds, std::size_t m) {
    InformationSet info(bounds, {{p1, q1}});
    const double tol = 1e-9 * bounds.range();
    CellFilter filter = sign == GradientSign::Negative
                            ? CellFilter([p1, tol](double a) { return a <= p1 + tol; })
                            : CellFilter([p1, tol](double a) { return a >= p1 - tol; });
    const auto res = maximin_lower_bound(info, cls, m, filter);
    if (res.solution.status != SolveStatus::Optimal)
        throw std::runtime_error("gradient_sign_value: LP did not solve");
    return res.lambda_star;
}

// ---------------------------------------------------------------------------

namespace {

// Candidate conversion rates across [q_lo, q_hi]: exact band edges plus points
// geometric in gamma-inverse space (prices map multiplicatively there).
std::vector<double> q2_candidates(double q_lo, double q_hi, std::size_t count) {
    std::vector<double> qs = {q_lo, q_hi};
    if (count > 2 && q_hi - q_lo > 1e-12) {
        const double u_lo = std::max(gamma_inv(q_hi), 1e-9);
        const double u_hi = gamma_inv(std::max(q_lo, 1e-9));
        if (u_hi > u_lo) {
            const double step = std::log(u_hi / u_lo) / static_cast<double>(count - 1);
            for (std::size_t k = 1; k + 1 < count; ++k)
                qs.push_back(gamma(u_lo * std::exp(step * static_cast<double>(k))));
        }
    }
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end(),
                         [](double x, double y) { return std::abs(x - y) < 1e-12; }),
             qs.end());
    return qs;
}

} // namespace

SecondPriceResult best_second_price(double p1, double q1, DistributionClass cls,
                                    const Bounds& bounds, std::size_t p2_count,
                                    std::size_t q2_count, std::size_t m) {
    if (p2_count < 1 || q2_count < 2)
        throw std::domain_error("best_second_price: need p2_count >= 1, q2_count >= 2");
    InformationSet base(bounds, {{p1, q1}});
    const auto base_res = maximin_lower_bound(base, cls, m);
    if (base_res.solution.status != SolveStatus::Optimal)
        throw std::runtime_error("best_second_price: baseline LP did not solve");

    const auto lower = lower_envelope(base, cls);
    const auto upper = upper_envelope(base, cls);

    SecondPriceResult out;
    out.single_point_lambda = base_res.lambda_star;
    out.guaranteed_ratio = base_res.lambda_star;
    out.p2_star = p1;

    // geometric p2 grid over the interior of the support
    const double lo = bounds.v_lo > 0.0 ? bounds.v_lo : bounds.v_hi * 1e-6;
    const double span = std::log(bounds.v_hi / lo);
    for (std::size_t k = 0; k < p2_count; ++k) {
        const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(p2_count);
        const double p2 = lo * std::exp(span * t);
        if (std::abs(p2 - p1) <= 1e-9 * bounds.range()) continue;

        const double q_lo = lower.left_limit(p2);
        const double q_hi = upper_left_limit(base, upper, p2);

        SecondPriceCell cell;
        cell.p2 = p2;
        cell.worst_lambda = kInf;
        for (double q2 : q2_candidates(q_lo, q_hi, q2_count)) {
            try {
                InformationSet ext = base.with_point(p2, q2);
                if (!is_feasible(ext, cls)) continue;
                const auto res = maximin_lower_bound(ext, cls, m);
                if (res.solution.status != SolveStatus::Optimal) continue;
                ++cell.q2_evaluated;
                cell.worst_lambda = std::min(cell.worst_lambda, res.lambda_star);
            } catch (const std::invalid_argument&) {
            }
        }
        if (cell.q2_evaluated == 0) continue;
        if (cell.worst_lambda > out.guaranteed_ratio) {
            out.guaranteed_ratio = cell.worst_lambda;
            out.p2_star = p2;
        }
        out.table.push_back(cell);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::size_t ternary_budget_rounds(const Bounds& bounds, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("ternary_budget_rounds: eps must be > 0");
    const double t = std::log(bounds.range() / (bounds.v_hi * eps)) / std::log(1.5);
    return t <= 0.0 ? 1 : static_cast<std::size_t>(std::ceil(t));
}

std::size_t ternary_budget_rounds_conservative(const Bounds& bounds, double eps) {
    if (!(eps > 0.0))
        throw std::domain_error("ternary_budget_rounds_conservative: eps must be > 0");
    if (bounds.v_lo <= 0.0) return std::numeric_limits<std::size_t>::max();
    const double t = std::log(bounds.range() / (bounds.v_lo * eps)) / std::log(1.5);
    return t <= 0.0 ? 1 : static_cast<std::size_t>(std::ceil(t));
}

TernaryResult ternary_search(const DemandModel& model, double eps, std::size_t max_rounds) {
    const std::size_t rounds =
        max_rounds > 0 ? max_rounds : ternary_budget_rounds(model.bounds, eps);
    TernaryResult out;
    double a = model.bounds.v_lo;
    double b = model.bounds.v_hi;
    for (std::size_t t = 0; t < rounds; ++t) {
        const double p_left = a + (b - a) / 3.0;
        const double p_right = b - (b - a) / 3.0;
        const double q_left = model.conversion_rate(p_left);
        const double q_right = model.conversion_rate(p_right);
        out.queries.push_back({p_left, q_left});
        out.queries.push_back({p_right, q_right});
        if (p_left * q_left < p_right * q_right)
            a = p_left;
        else
            b = p_right;
        ++out.rounds;
    }
    double best_rev = -1.0;
    out.final_price = 0.5 * (a + b);
    for (const auto& q : out.queries)
        if (q.price * q.rate > best_rev) {
            best_rev = q.price * q.rate;
            out.final_price = q.price;
        }
    return out;
}

Explorer make_ternary_explorer(const DemandModel& model) {
    struct State {
        DemandModel model;
        double a, b;
    };
    auto st = std::make_shared<State>(State{model, model.bounds.v_lo, model.bounds.v_hi});
    return [st]() -> std::optional<ExplorationStep> {
        if (st->b - st->a <= 1e-12 * st->model.bounds.range()) return std::nullopt;
        const double p_left = st->a + (st->b - st->a) / 3.0;
        const double p_right = st->b - (st->b - st->a) / 3.0;
        const double q_left = st->model.conversion_rate(p_left);
        const double q_right = st->model.conversion_rate(p_right);
        if (p_left * q_left < p_right * q_right)
            st->a = p_left;
        else
            st->b = p_right;
        ExplorationStep step;
        step.queries = {{p_left, q_left}, {p_right, q_right}};
        step.bracket_lo = st->a;
        step.bracket_hi = st->b;
        return step;
    };
}

MetaResult meta_dynamic_pricing(const Explorer& explorer, const InformationSet& initial,
                                StoppingCriterion criterion, double eps, std::size_t m,
                                std::size_t query_budget) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::domain_error("meta_dynamic_pricing: eps must be in (0, 1)");
    const Bounds& bounds = initial.bounds();
    const double tol = 1e-9 * bounds.range();
    const DistributionClass cls =
        criterion == StoppingCriterion::Regular ? DistributionClass::Regular
                                                : DistributionClass::General;

    InformationSet info = initial;
    double lo = bounds.v_lo;
    double hi = bounds.v_hi;
    MetaResult out;

    for (;;) {
        // refine the grid inside the current bracket, where the optimum lives
        std::vector<double> extra;
        constexpr std::size_t kRefine = 64;
        for (std::size_t k = 0; k <= kRefine; ++k)
            extra.push_back(lo + (hi - lo) * static_cast<double>(k) /
                                     static_cast<double>(kRefine));
        CellFilter filter;
        if (criterion == StoppingCriterion::GeneralUnimodal)
            filter = [lo, hi, tol](double a) { return a >= lo - tol && a < hi - tol; };

        // lambda_star is a certified lower bound on the continuum guarantee,
        // so reaching the threshold really does certify the target ratio
        const auto res = maximin_lower_bound(info, cls, m, extra, filter);
        if (res.solution.status == SolveStatus::Optimal && res.lambda_star >= out.lambda_star) {
            out.lambda_star = res.lambda_star;
            out.mechanism = res.mechanism;
        }
        if (res.solution.status == SolveStatus::Optimal &&
            res.lambda_star >= 1.0 - eps) {
            out.reached_threshold = true;
            return out;
        }
        if (out.queries_used + 2 > query_budget) return out;

        const auto step = explorer();
        if (!step) return out;
        for (const auto& q : step->queries) info = info.with_point(q.price, q.rate);
        out.queries_used += step->queries.size();
        ++out.rounds;
        lo = step->bracket_lo;
        hi = step->bracket_hi;
    }
}

} // namespace robustpricing
