#include "robustpricing/maximin.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace robustpricing {

namespace {

// Resolution of the fixed ladder on which Nature's candidates are sampled in
// build_lp. It is a power of two so that every dyadic grid is an exact subset.
constexpr std::size_t kLadderDivisions = 1024;

// Round up to a power of two so that doubling M always yields a refinement:
// exponents k/D are dyadic rationals, exact in binary floating point, hence
// the coarse points reappear bit-for-bit in the finer grid.
std::size_t dyadic_divisions(std::size_t m) {
    std::size_t d = 1;
    while (d < m + 1) d *= 2;
    return d;
}

// Geometrically spaced points over the bounds; with v_lo = 0 the geometric
// part is anchored at a small positive fraction of v_hi and 0 is prepended.
std::vector<double> geometric_points(const Bounds& b, std::size_t divisions) {
    std::vector<double> pts;
    pts.reserve(divisions + 2);
    const double lo = b.v_lo > 0.0 ? b.v_lo : b.v_hi * 1e-6;
    if (b.v_lo == 0.0) pts.push_back(0.0);
    const double ratio = std::log(b.v_hi / lo);
    for (std::size_t k = 0; k <= divisions; ++k)
        pts.push_back(lo * std::exp(ratio * static_cast<double>(k) /
                                    static_cast<double>(divisions)));
    if (b.v_lo == 0.0) pts[1] = lo; else pts.front() = b.v_lo;
    pts.back() = b.v_hi;
    return pts;
}

// Merge, sort and deduplicate grid points; points closer than 1e-12 of the
// range collapse to one to avoid degenerate cells.
std::vector<double> canonical_grid(std::vector<double> pts, const Bounds& b) {
    std::sort(pts.begin(), pts.end());
    const double tol = 1e-12 * b.range();
    std::vector<double> out;
    out.reserve(pts.size());
    for (double p : pts) {
        if (!out.empty() && p - out.back() <= tol) continue;
        out.push_back(p);
    }
    return out;
}

} // namespace

GridPartition build_grid(const InformationSet& info, DistributionClass cls, std::size_t m,
                         const std::vector<double>& extra_points) {
    if (m < 1) throw std::domain_error("build_grid: M must be >= 1");
    if (!is_feasible(info, cls))
        throw std::invalid_argument("build_grid: infeasible information set");
    const Bounds& b = info.bounds();

    std::vector<double> pts = geometric_points(b, dyadic_divisions(m));
    pts.reserve(pts.size() + info.points().size() + extra_points.size());
    for (const auto& k : info.points()) pts.push_back(k.price);
    for (double p : extra_points)
        if (b.contains(p)) pts.push_back(p);

    GridPartition grid;
    grid.points = canonical_grid(std::move(pts), b);
    grid.points.front() = b.v_lo;
    grid.points.back() = b.v_hi;

    const auto upper = upper_envelope(info, cls);
    grid.certified.reserve(grid.points.size());
    for (double p : grid.points)
        grid.certified.push_back(certify_r_star(p, info, cls, upper).member());
    return grid;
}

GridPartition build_grid(const InformationSet& info, DistributionClass cls, std::size_t m) {
    return build_grid(info, cls, m, {});
}

LpProblem build_lp(const InformationSet& info, DistributionClass cls,
                   const GridPartition& grid, const CellFilter& filter) {
    if (grid.points.size() < 2 || grid.certified.size() != grid.points.size())
        throw std::invalid_argument("build_lp: malformed grid");
    const Bounds& b = info.bounds();
    const double delta = 1e-9 * b.range();
    const double max_pq = info.max_knot_revenue();
    const auto upper = upper_envelope(info, cls);

    LpProblem lp;
    lp.atoms = grid.points;
    const std::size_t cells = grid.points.size() - 1;
    const std::size_t n_atoms = lp.atoms.size();

    // Nature's candidates are sampled on a fixed-resolution ladder (merged
    // with the grid and the knots) plus a left-limit probe below every ladder
    // point. Every certified sample gets its own constraint row, so Nature's
    // strength does not depend on M: refining the grid only enriches the
    // seller's atoms, which makes lambda* monotone under grid refinement,
    // monotone in added consistent data, and never above worst_case_ratio on
    // any grid contained in the ladder. Rows implied by another row in the
    // same cell (no larger opt, no smaller revenue at every atom) are dropped;
    // the pruning is exact, so the LP value is unchanged.
    std::vector<double> ladder = geometric_points(b, kLadderDivisions);
    ladder.insert(ladder.end(), grid.points.begin(), grid.points.end());
    for (const auto& k : info.points()) ladder.push_back(k.price);
    ladder = canonical_grid(std::move(ladder), b);

    struct Row {
        double opt;
        std::vector<double> rev;
    };
    std::vector<std::vector<Row>> cell_rows(cells);

    auto dominates = [n_atoms](const Row& a, const Row& b) {
        // row a implies row b
        if (a.opt < b.opt) return false;
        for (std::size_t j = 0; j < n_atoms; ++j)
            if (a.rev[j] > b.rev[j]) return false;
        return true;
    };
    auto visit = [&](double r) {
        if (r < grid.points.front() || r > grid.points.back()) return false;
        const auto it = std::upper_bound(grid.points.begin(), grid.points.end(), r);
        const std::size_t i =
            std::min(static_cast<std::size_t>(it - grid.points.begin()) - 1, cells - 1);
        if (filter && !filter(grid.points[i])) return false;
        const auto cert = certify_r_star(r, info, cls, upper);
        if (!cert.member()) return false;
        Row row;
        row.opt = std::max(max_pq, r * cert.q_star);
        const auto nature = lower_envelope(info.with_point(r, cert.q_star), cls);
        row.rev.resize(n_atoms);
        for (std::size_t j = 0; j < n_atoms; ++j)
            row.rev[j] = revenue(nature, lp.atoms[j]);
        auto& kept = cell_rows[i];
        for (const Row& k : kept)
            if (dominates(k, row)) return true;
        std::erase_if(kept, [&](const Row& k) { return dominates(row, k); });
        kept.push_back(std::move(row));
        return true;
    };
    // one probe per ladder point, at its left limit: revenue jumps down just
    // below an atom or a knot, so u - delta is the conservative candidate and
    // a second row at u itself would only duplicate it. Fall back to u when
    // the left limit is uncertified or lands in a filtered-out cell.
    for (double u : ladder) {
        if (!(u - delta > b.v_lo) || !visit(u - delta)) visit(u);
    }

    for (std::size_t i = 0; i < cells; ++i)
        for (auto& row : cell_rows[i]) {
            lp.opt_coeff.push_back(row.opt);
            lp.revenue.push_back(std::move(row.rev));
            lp.cell_of_row.push_back(i);
        }
    lp.no_certified_cells = lp.revenue.empty();
    return lp;
}

LpSolution solve_lp(const LpProblem& lp) {
    LpSolution sol;
    if (lp.no_certified_cells) {
        sol.status = SolveStatus::Infeasible;
        return sol;
    }
    const std::size_t k = lp.atoms.size();
    DenseLp dense;
    dense.num_vars = k + 1; // psi_0..psi_{k-1}, lambda
    dense.objective.assign(k + 1, 0.0);
    dense.objective[k] = 1.0;

    for (std::size_t r = 0; r < lp.revenue.size(); ++r) {
        std::vector<double> row(k + 1, 0.0);
        for (std::size_t j = 0; j < k; ++j) row[j] = -lp.revenue[r][j];
        row[k] = lp.opt_coeff[r];
        dense.a_ub.push_back(std::move(row));
        dense.b_ub.push_back(0.0);
    }
    { // lambda <= 1
        std::vector<double> row(k + 1, 0.0);
        row[k] = 1.0;
        dense.a_ub.push_back(std::move(row));
        dense.b_ub.push_back(1.0);
    }
    { // sum psi = 1 (tightening the paper's <= 1; slack only wastes revenue)
        std::vector<double> row(k + 1, 1.0);
        row[k] = 0.0;
        dense.a_eq.push_back(std::move(row));
        dense.b_eq.push_back(1.0);
    }

    const auto res = solve_simplex(dense);
    sol.iterations = res.iterations;
    if (res.status == SolveStatus::Infeasible) {
        sol.status = SolveStatus::Infeasible;
        return sol;
    }
    if (res.status != SolveStatus::Optimal) {
        sol.status = SolveStatus::NumericalFailure;
        return sol;
    }
    sol.lambda_star = res.x[k];
    sol.psi.assign(res.x.begin(), res.x.begin() + k);

    double worst = 0.0;
    for (std::size_t r = 0; r < lp.revenue.size(); ++r) {
        double lhs = sol.lambda_star * lp.opt_coeff[r];
        for (std::size_t j = 0; j < k; ++j) lhs -= lp.revenue[r][j] * sol.psi[j];
        worst = std::max(worst, lhs);
    }
    sol.max_constraint_residual = worst;
    sol.status = worst <= 1e-8 ? SolveStatus::Optimal : SolveStatus::NumericalFailure;
    return sol;
}

void write_lp_dump(const LpProblem& lp, std::ostream& os) {
    os << "# maximize lambda; columns: psi over atoms, then lambda\n";
    os << "atoms";
    for (double a : lp.atoms) os << ' ' << a;
    os << "\nobjective";
    for (std::size_t j = 0; j < lp.atoms.size(); ++j) os << " 0";
    os << " 1\n";
    for (std::size_t r = 0; r < lp.revenue.size(); ++r) {
        os << "cell " << lp.cell_of_row[r];
        for (double v : lp.revenue[r]) os << ' ' << -v;
        os << ' ' << lp.opt_coeff[r] << " <= 0\n";
    }
    os << "simplex sum(psi) = 1, psi >= 0, 0 <= lambda <= 1\n";
}

MaximinResult maximin_lower_bound(const InformationSet& info, DistributionClass cls,
                                  std::size_t m, const std::vector<double>& extra_points,
                                  const CellFilter& filter) {
    MaximinResult out;
    out.grid = build_grid(info, cls, m, extra_points);
    const auto lp = build_lp(info, cls, out.grid, filter);
    out.solution = solve_lp(lp);
    if (out.solution.status != SolveStatus::Optimal) return out;
    out.lambda_star = out.solution.lambda_star;

    // renormalize: clip noise, then assign any slack to the best knot's atom
    double best_knot = 0.0;
    double best_rev = -1.0;
    for (const auto& kpt : info.points())
        if (kpt.price * kpt.rate > best_rev) {
            best_rev = kpt.price * kpt.rate;
            best_knot = kpt.price;
        }
    auto psi = out.solution.psi;
    double total = 0.0;
    for (double& w : psi) {
        if (w < 1e-12) w = 0.0;
        total += w;
    }
    std::size_t anchor = 0;
    double best_dist = kInf;
    for (std::size_t j = 0; j < lp.atoms.size(); ++j) {
        const double d = std::abs(lp.atoms[j] - best_knot);
        if (d < best_dist) {
            best_dist = d;
            anchor = j;
        }
    }
    psi[anchor] += 1.0 - total;
    for (std::size_t j = 0; j < psi.size(); ++j)
        if (psi[j] > 0.0) out.mechanism.atoms.push_back({lp.atoms[j], psi[j]});
    return out;
}

MaximinResult maximin_lower_bound(const InformationSet& info, DistributionClass cls,
                                  std::size_t m, const CellFilter& filter) {
    return maximin_lower_bound(info, cls, m, {}, filter);
}

} // namespace robustpricing
