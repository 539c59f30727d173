#include "helpers.hpp"

#include <doctest.h>

#include <limits>

using namespace robustpricing;

namespace {

double scan_optimal_revenue(const DemandModel& model, int samples) {
    double best = 0.0;
    const auto& b = model.bounds;
    for (int k = 0; k <= samples; ++k) {
        const double p = b.v_lo + b.range() * k / static_cast<double>(samples);
        best = std::max(best, model.revenue_at(p));
    }
    return best;
}

} // namespace

TEST_SUITE("experiments") {

TEST_CASE("sampling is deterministic and in range") {
    const auto a = sample_demand_models(DemandModel::Kind::Linear, 50, 42);
    const auto b = sample_demand_models(DemandModel::Kind::Linear, 50, 42);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].a == b[i].a);
        CHECK(a[i].b == b[i].b);
        CHECK(a[i].b >= 1.0);
        CHECK(a[i].b <= 5.0);
        CHECK(a[i].a >= 1.0);
        CHECK(a[i].a <= a[i].b);
    }
    const auto c = sample_demand_models(DemandModel::Kind::Exponential, 50, 42);
    for (const auto& m : c) {
        CHECK(m.a >= -0.2);
        CHECK(m.a <= m.b);
    }
}

TEST_CASE("closed-form optimal price matches a dense scan") {
    std::mt19937_64 rng(15);
    for (auto kind : {DemandModel::Kind::Linear, DemandModel::Kind::Exponential}) {
        const auto models = sample_demand_models(kind, 40, 16);
        for (const auto& m : models) {
            const double scan = scan_optimal_revenue(m, 1000000);
            CHECK(m.optimal_revenue() == doctest::Approx(scan).epsilon(1e-6));
        }
    }
    (void)rng;
}

TEST_CASE("support-consistent models yield regular-feasible probes") {
    std::mt19937_64 rng(16);
    int done = 0;
    for (auto kind : {DemandModel::Kind::Linear, DemandModel::Kind::Exponential}) {
        for (const auto& m : sample_demand_models(kind, 60, 17)) {
            if (!m.supported_within_bounds()) continue;
            ++done;
            std::vector<PricePoint> pts;
            for (int k = 0; k < 5; ++k) {
                const double p = testutil::uniform(rng, 0.01, 0.99);
                pts.push_back({p, m.conversion_rate(p)});
            }
            InformationSet info(m.bounds, pts);
            CHECK(is_feasible(info, DistributionClass::Regular));
        }
    }
    CHECK(done > 50);
}

TEST_CASE("model ratio of the clairvoyant point mass is one") {
    for (const auto& m : sample_demand_models(DemandModel::Kind::Linear, 10, 3)) {
        const PricingMechanism mech{{{m.optimal_price(), 1.0}}};
        CHECK(model_ratio(mech, m) == doctest::Approx(1.0));
        const PricingMechanism off{{{m.bounds.v_hi, 1.0}}};
        CHECK(model_ratio(off, m) <= 1.0);
    }
}

TEST_CASE("gradient study flags infeasible rates and peaks near zero gradient") {
    const Bounds bounds(1.0, 100.0);
    const double p1 = 10.0, q1 = 0.5, eps = 0.01;
    const double p_eps = (1.0 + eps) * p1;
    const double q_zero = q1 * p1 / p_eps; // zero revenue gradient
    std::vector<double> grid;
    for (int k = 0; k <= 20; ++k) grid.push_back(q1 * k / 20.0);
    grid.push_back(q_zero);
    grid.push_back(0.6); // above q1: monotonicity violated

    const auto rows = gradient_value_study(p1, q1, eps, grid, DistributionClass::Regular,
                                           bounds, 120);
    REQUIRE(rows.size() == grid.size());
    CHECK_FALSE(rows.back().feasible);

    double best = 0.0, best_q = -1.0;
    for (const auto& r : rows)
        if (r.feasible && r.lambda_star > best) {
            best = r.lambda_star;
            best_q = r.q_eps;
        }
    CHECK(best_q == doctest::Approx(q_zero));
    CHECK(best > 0.8);
}

TEST_CASE("gradient sign dominates the single-point bound") {
    const Bounds bounds(1.0, 100.0);
    for (double q1 : {0.1, 0.25, 0.5, 0.9}) {
        InformationSet info(bounds, {{10.0, q1}});
        const double base =
            maximin_lower_bound(info, DistributionClass::Regular, 150).lambda_star;
        const double neg = gradient_sign_value(10.0, q1, GradientSign::Negative,
                                               DistributionClass::Regular, bounds, 150);
        const double pos = gradient_sign_value(10.0, q1, GradientSign::Positive,
                                               DistributionClass::Regular, bounds, 150);
        CHECK(neg >= base - 1e-9);
        CHECK(pos >= base - 1e-9);
    }
    // a negative gradient carries no information at low conversion rates
    InformationSet low(bounds, {{10.0, 0.25}});
    const double base =
        maximin_lower_bound(low, DistributionClass::Regular, 150).lambda_star;
    const double neg = gradient_sign_value(10.0, 0.25, GradientSign::Negative,
                                           DistributionClass::Regular, bounds, 150);
    CHECK(neg == doctest::Approx(base).epsilon(1e-6));
}

TEST_CASE("second price search improves on the single point") {
    const Bounds bounds(1.0, 100.0);
    for (double q1 : {0.1, 0.5}) {
        const auto res = best_second_price(10.0, q1, DistributionClass::Regular, bounds,
                                           10, 5, 120);
        CHECK(res.guaranteed_ratio >= res.single_point_lambda - 1e-9);
        CHECK_FALSE(res.table.empty());
    }
    // direction rule: low conversion explores below, high above
    const auto lo = best_second_price(10.0, 0.1, DistributionClass::Regular, bounds, 16, 6, 120);
    const auto hi = best_second_price(10.0, 0.7, DistributionClass::Regular, bounds, 16, 6, 120);
    CHECK(lo.p2_star < 10.0);
    CHECK(hi.p2_star > 10.0);
}

TEST_CASE("finer nature grids can only lower the guarantee") {
    const Bounds bounds(1.0, 100.0);
    // nested q2 grids: 3, 5, 9 points share all coarser candidates
    const auto g3 = best_second_price(10.0, 0.5, DistributionClass::Regular, bounds, 8, 3, 100);
    const auto g5 = best_second_price(10.0, 0.5, DistributionClass::Regular, bounds, 8, 5, 100);
    const auto g9 = best_second_price(10.0, 0.5, DistributionClass::Regular, bounds, 8, 9, 100);
    CHECK(g5.guaranteed_ratio <= g3.guaranteed_ratio + 1e-9);
    CHECK(g9.guaranteed_ratio <= g5.guaranteed_ratio + 1e-9);
}

TEST_CASE("ternary budget formulas") {
    const Bounds b(1.0, 100.0);
    CHECK(ternary_budget_rounds(b, 0.01) == 12);              // 24 queries as printed
    CHECK(ternary_budget_rounds_conservative(b, 0.01) == 23); // 46 queries
    CHECK(ternary_budget_rounds(Bounds(0.0, 1.0), 0.01) == 12);
    CHECK(ternary_budget_rounds_conservative(Bounds(0.0, 1.0), 0.01) ==
          std::numeric_limits<std::size_t>::max());
}

TEST_CASE("ternary bracket contracts by two thirds each round") {
    DemandModel m;
    m.kind = DemandModel::Kind::Linear;
    m.a = 2.0;
    m.b = 4.0;
    m.bounds = Bounds(0.0, 1.0);
    auto explorer = make_ternary_explorer(m);
    double width = 1.0;
    const double p_star = m.optimal_price();
    for (int t = 0; t < 10; ++t) {
        const auto step = explorer();
        REQUIRE(step.has_value());
        const double w = step->bracket_hi - step->bracket_lo;
        CHECK(w == doctest::Approx(width * 2.0 / 3.0));
        // unimodality keeps the optimum inside the bracket
        CHECK(p_star >= step->bracket_lo - 1e-12);
        CHECK(p_star <= step->bracket_hi + 1e-12);
        width = w;
    }
}

TEST_CASE("ternary search returns a near-optimal price") {
    for (auto kind : {DemandModel::Kind::Linear, DemandModel::Kind::Exponential}) {
        for (auto m : sample_demand_models(kind, 30, 21)) {
            if (!m.supported_within_bounds()) continue;
            const auto res = ternary_search(m, 0.01);
            CHECK(res.queries.size() == 2 * res.rounds);
            const double opt = scan_optimal_revenue(m, 1000000);
            CHECK(m.revenue_at(res.final_price) >= (1.0 - 0.01) * opt - 1e-12);
        }
    }
}

TEST_CASE("meta algorithm stops with a certified mechanism") {
    std::size_t checked = 0;
    for (auto kind : {DemandModel::Kind::Linear, DemandModel::Kind::Exponential}) {
        for (const auto& m : sample_demand_models(kind, 8, 33)) {
            if (!m.supported_within_bounds()) continue;
            ++checked;
            InformationSet init(m.bounds, {});
            std::size_t reg_queries = 0;
            for (auto crit : {StoppingCriterion::Regular, StoppingCriterion::GeneralUnimodal}) {
                const auto res = meta_dynamic_pricing(make_ternary_explorer(m), init, crit,
                                                      0.01, 120, 80);
                CHECK(res.reached_threshold);
                CHECK(res.lambda_star >= 0.99);
                CHECK(model_ratio(res.mechanism, m) >= 0.99);
                if (crit == StoppingCriterion::Regular)
                    reg_queries = res.queries_used;
                else
                    CHECK(reg_queries <= res.queries_used); // smaller ambiguity set
            }
        }
    }
    CHECK(checked >= 10);
}

TEST_CASE("meta algorithm reports budget exhaustion") {
    DemandModel m;
    m.kind = DemandModel::Kind::Linear;
    m.a = 2.0;
    m.b = 4.0;
    m.bounds = Bounds(0.0, 1.0);
    InformationSet init(m.bounds, {});
    const auto res = meta_dynamic_pricing(make_ternary_explorer(m), init,
                                          StoppingCriterion::GeneralUnimodal, 0.01, 80, 4);
    CHECK_FALSE(res.reached_threshold);
    CHECK(res.queries_used <= 4);
}

}
