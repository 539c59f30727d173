#include "helpers.hpp"

#include <doctest.h>

#include <sstream>

using namespace robustpricing;

TEST_SUITE("maximin") {

TEST_CASE("grid construction on endpoints-only data") {
    InformationSet info(Bounds(1.0, 100.0), {});
    const auto grid = build_grid(info, DistributionClass::General, 3);
    REQUIRE(grid.points.size() == 5);
    CHECK(grid.points.front() == 1.0);
    CHECK(grid.points.back() == 100.0);
    // every point except the v_hi sentinel (pinned rate 0) is in S(I)
    for (std::size_t i = 0; i + 1 < grid.points.size(); ++i) CHECK(grid.certified[i]);
    CHECK_FALSE(grid.certified.back());
    CHECK_THROWS_AS(build_grid(info, DistributionClass::General, 0), std::domain_error);
}

TEST_CASE("grid contains each knot exactly once") {
    const auto info = testutil::fig1();
    const auto grid = build_grid(info, DistributionClass::Regular, 50);
    for (const auto& pt : info.points()) {
        std::size_t count = 0;
        for (double a : grid.points)
            if (a == pt.price) ++count;
        CHECK(count == 1);
    }
    // certification honors the dominance condition
    const double maxpq = info.max_knot_revenue();
    const auto upper = upper_envelope(info, DistributionClass::Regular);
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const double r = grid.points[i];
        if (r * upper_left_limit(info, upper, r) < maxpq - 1e-12)
            CHECK_FALSE(grid.certified[i]);
    }
}

TEST_CASE("lp structure for a minimal instance") {
    InformationSet info(Bounds(1.0, 100.0), {});
    const auto grid = build_grid(info, DistributionClass::General, 1);
    REQUIRE(grid.points.size() == 3);
    const auto lp = build_lp(info, DistributionClass::General, grid);
    // a handful of Nature samples per certified cell, never more than three
    CHECK(lp.revenue.size() >= 2);
    CHECK(lp.revenue.size() <= 6);
    CHECK(lp.opt_coeff.size() == lp.revenue.size());
    CHECK(lp.cell_of_row.size() == lp.revenue.size());
    CHECK(lp.atoms.size() == 3);
    const double maxpq = info.max_knot_revenue();
    for (double c : lp.opt_coeff) CHECK(c >= maxpq - 1e-12);
}

TEST_CASE("lp solution puts certified weight on the simplex") {
    const auto info = testutil::fig1();
    for (auto cls : {DistributionClass::General, DistributionClass::Regular}) {
        const auto res = maximin_lower_bound(info, cls, 100);
        REQUIRE(res.solution.status == SolveStatus::Optimal);
        CHECK(res.lambda_star > 0.0);
        CHECK(res.lambda_star <= 1.0);
        double total = 0.0;
        for (const auto& a : res.mechanism.atoms) {
            CHECK(a.rate > 0.0);
            total += a.rate;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_NOTHROW(validate_mechanism(res.mechanism));
        CHECK(res.solution.max_constraint_residual <= 1e-8);
    }
}

TEST_CASE("benchmark: uniform-ignorance value approaches 1/(1+ln(v_hi/v_lo))") {
    InformationSet info(Bounds(1.0, 100.0), {});
    const auto res = maximin_lower_bound(info, DistributionClass::General, 500);
    REQUIRE(res.solution.status == SolveStatus::Optimal);
    CHECK(res.lambda_star == doctest::Approx(1.0 / (1.0 + std::log(100.0))).epsilon(0.01));
}

TEST_CASE("single observed point, regular class, paper operating point") {
    InformationSet info(Bounds(1.0, 100.0), {{10.0, 0.5}});
    const auto res = maximin_lower_bound(info, DistributionClass::Regular, 300);
    REQUIRE(res.solution.status == SolveStatus::Optimal);
    CHECK(res.lambda_star > 0.55);
    CHECK(res.lambda_star < 0.66);
}

TEST_CASE("soundness: the returned mechanism honors lambda on a finer grid") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const auto cls = trial % 2 == 0 ? DistributionClass::General : DistributionClass::Regular;
        const auto info = testutil::random_set(rng, cls, 1 + rng() % 3);
        const auto res = maximin_lower_bound(info, cls, 300);
        REQUIRE(res.solution.status == SolveStatus::Optimal);
        const auto fine = build_grid(info, cls, 1200);
        const auto wc = worst_case_ratio(res.mechanism, info, cls, fine.points);
        CHECK(wc.value >= res.lambda_star - 5e-3);
    }
}

TEST_CASE("lambda is monotone in grid resolution") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const auto cls = trial % 2 == 0 ? DistributionClass::General : DistributionClass::Regular;
        const auto info = testutil::random_set(rng, cls, 1 + rng() % 3);
        const double coarse = maximin_lower_bound(info, cls, 40).lambda_star;
        const double fine = maximin_lower_bound(info, cls, 80).lambda_star;
        CHECK(fine >= coarse - 1e-6);
    }
}

TEST_CASE("lambda is monotone in added consistent data") {
    std::mt19937_64 rng(14);
    int done = 0;
    while (done < 50) {
        const auto cls = done % 2 == 0 ? DistributionClass::General : DistributionClass::Regular;
        const auto info = testutil::random_set(rng, cls, 1 + rng() % 2);
        const auto& b = info.bounds();
        const double p = testutil::uniform(rng, b.v_lo * 1.01, b.v_hi * 0.99);
        const double q_lo = lower_envelope(info, cls).left_limit(p);
        const double q_hi = upper_left_limit(info, cls, p);
        InformationSet ext = info;
        try {
            ext = info.with_point(p, 0.5 * (q_lo + q_hi));
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (!is_feasible(ext, cls)) continue;
        // share the grid so discretization does not mask the comparison
        const std::vector<double> extra = {p};
        const double before = maximin_lower_bound(info, cls, 50, extra, {}).lambda_star;
        const double after = maximin_lower_bound(ext, cls, 50, extra, {}).lambda_star;
        CHECK(after >= before - 1e-6);
        ++done;
    }
}

TEST_CASE("dropping constraints never lowers lambda") {
    InformationSet info(Bounds(1.0, 100.0), {{10.0, 0.5}});
    const auto cls = DistributionClass::Regular;
    const double full = maximin_lower_bound(info, cls, 200).lambda_star;
    const double left = maximin_lower_bound(info, cls, 200,
                                            [](double a) { return a <= 10.0; })
                            .lambda_star;
    const double right = maximin_lower_bound(info, cls, 200,
                                             [](double a) { return a >= 10.0; })
                             .lambda_star;
    CHECK(left >= full - 1e-9);
    CHECK(right >= full - 1e-9);
}

TEST_CASE("lp dump is written in the tabular format") {
    InformationSet info(Bounds(1.0, 100.0), {});
    const auto grid = build_grid(info, DistributionClass::General, 2);
    const auto lp = build_lp(info, DistributionClass::General, grid);
    std::ostringstream os;
    write_lp_dump(lp, os);
    const auto text = os.str();
    CHECK(text.find("objective") != std::string::npos);
    CHECK(text.find("cell") != std::string::npos);
}

TEST_CASE("deterministic end to end") {
    const auto info = testutil::fig1();
    const auto a = maximin_lower_bound(info, DistributionClass::Regular, 120);
    const auto b = maximin_lower_bound(info, DistributionClass::Regular, 120);
    CHECK(a.lambda_star == b.lambda_star);
    REQUIRE(a.mechanism.atoms.size() == b.mechanism.atoms.size());
    for (std::size_t i = 0; i < a.mechanism.atoms.size(); ++i) {
        CHECK(a.mechanism.atoms[i].price == b.mechanism.atoms[i].price);
        CHECK(a.mechanism.atoms[i].rate == b.mechanism.atoms[i].rate);
    }
}

TEST_CASE("infeasible data is rejected before the solve") {
    InformationSet rising(Bounds(0.0, 1.0), {{0.3, 0.2}, {0.6, 0.4}});
    CHECK_THROWS_AS(build_grid(rising, DistributionClass::General, 10),
                    std::invalid_argument);
}

}
