#include "robustpricing/envelopes.hpp"

#include <algorithm>
#include <cmath>

namespace robustpricing {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

void require_feasible(const InformationSet& info, DistributionClass cls) {
    if (!is_feasible(info, cls))
        throw std::invalid_argument("envelope: information set is infeasible for the class");
}

SegmentCcdf make_segment(DistributionClass cls, const PricePoint& a, const PricePoint& b) {
    const auto kind = cls == DistributionClass::General
                          ? SegmentCcdf::Kind::GeneralFlat
                          : SegmentCcdf::Kind::RegularGammaLinear;
    return {kind, a.price, a.rate, b.price, b.rate};
}

} // namespace

double SegmentCcdf::beta() const {
    const double g0 = gamma_inv(q_s);
    const double g1 = gamma_inv(q_end);
    if (std::isinf(g1)) return kInf;
    if (s_end == s) return 0.0;
    return (g1 - g0) / (s_end - s);
}

double SegmentCcdf::eval(double v) const {
    if (kind == Kind::GeneralFlat) return v < s ? 1.0 : q_end;
    const double b = beta();
    if (std::isinf(b)) {
        if (v < s) return 1.0;
        return v == s ? q_s : 0.0;
    }
    const double arg = gamma_inv(q_s) + b * (v - s);
    if (arg <= 0.0) return 1.0;
    return clamp01(1.0 / (1.0 + arg));
}

double SegmentCcdf::eval_left(double v) const {
    if (kind == Kind::GeneralFlat) return v > s ? q_end : 1.0;
    const double b = beta();
    if (std::isinf(b)) return v > s ? 0.0 : 1.0;
    return eval(v);
}

double segment_ccdf(const SegmentCcdf& seg, double v, const Bounds& bounds) {
    if (!bounds.contains(v))
        throw std::domain_error("segment_ccdf: evaluation point outside bounds");
    if (v == bounds.v_hi) return 0.0;
    return seg.eval(v);
}

PiecewiseCcdf::PiecewiseCcdf(Bounds bounds, std::vector<PricePoint> knots,
                             std::vector<Interval> intervals)
    : bounds_(bounds), knots_(std::move(knots)), intervals_(std::move(intervals)) {
    if (knots_.size() < 2 || intervals_.size() != knots_.size() - 1)
        throw std::invalid_argument("PiecewiseCcdf: knots/intervals mismatch");
}

std::size_t PiecewiseCcdf::interval_index(double v) const {
    // largest i with knots_[i].price <= v, capped to the last interval
    auto it = std::upper_bound(knots_.begin(), knots_.end(), v,
                               [](double x, const PricePoint& k) { return x < k.price; });
    std::size_t i = static_cast<std::size_t>(it - knots_.begin());
    if (i == 0) throw std::domain_error("PiecewiseCcdf: point below support");
    return std::min(i - 1, intervals_.size() - 1);
}

double PiecewiseCcdf::value(double v) const {
    if (!bounds_.contains(v))
        throw std::domain_error("PiecewiseCcdf: evaluation point outside bounds");
    if (v >= bounds_.v_hi) return 0.0;
    const auto& parts = intervals_[interval_index(v)].parts;
    double out = 1.0;
    for (const auto& seg : parts) out = std::min(out, seg.eval(v));
    return clamp01(out);
}

double PiecewiseCcdf::left_limit(double p) const {
    if (!bounds_.contains(p))
        throw std::domain_error("PiecewiseCcdf: evaluation point outside bounds");
    if (p == bounds_.v_lo) return knots_.front().rate;
    // interval with knots_[i].price < p <= knots_[i+1].price
    auto it = std::lower_bound(knots_.begin(), knots_.end(), p,
                               [](const PricePoint& k, double x) { return k.price < x; });
    std::size_t i = static_cast<std::size_t>(it - knots_.begin());
    const auto& parts = intervals_[i - 1].parts;
    double out = 1.0;
    for (const auto& seg : parts) out = std::min(out, seg.eval_left(p));
    return clamp01(out);
}

PiecewiseCcdf lower_envelope(const InformationSet& info, DistributionClass cls) {
    require_feasible(info, cls);
    const auto& pts = info.points();
    std::vector<PiecewiseCcdf::Interval> intervals;
    intervals.reserve(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        intervals.push_back({{make_segment(cls, pts[i], pts[i + 1])}});
    return {info.bounds(), pts, std::move(intervals)};
}

PiecewiseCcdf upper_envelope(const InformationSet& info, DistributionClass cls) {
    require_feasible(info, cls);
    const auto& pts = info.points();
    const std::size_t n = info.interior_count();
    std::vector<PiecewiseCcdf::Interval> intervals(pts.size() - 1);

    if (cls == DistributionClass::General) {
        // U = q_i on [p_i, p_{i+1}): the previous flat piece carried forward
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            const auto& a = pts[i == 0 ? 0 : i - 1];
            intervals[i].parts.push_back(
                {SegmentCcdf::Kind::GeneralFlat, a.price, a.rate, pts[i].price, pts[i].rate});
        }
        return {info.bounds(), pts, std::move(intervals)};
    }

    auto seg = [&](std::size_t i) { return make_segment(cls, pts[i], pts[i + 1]); };
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        auto& parts = intervals[i].parts;
        if (i == 0) {
            // backward extrapolation of the second segment, capped at 1
            if (n >= 1)
                parts.push_back(seg(1));
            else
                parts.push_back({SegmentCcdf::Kind::GeneralFlat, pts[0].price, 1.0,
                                 pts[0].price, 1.0});
        } else if (i + 2 <= n) { // i in {1, ..., N-2}
            parts.push_back(seg(i - 1));
            parts.push_back(seg(i + 1));
        } else { // i in {N-1, N}
            parts.push_back(seg(i - 1));
        }
    }
    return {info.bounds(), pts, std::move(intervals)};
}

double upper_left_limit(const InformationSet& info, const PiecewiseCcdf& upper_env,
                        double r) {
    const auto& pts = info.points();
    if (!info.bounds().contains(r))
        throw std::domain_error("upper_left_limit: point outside bounds");
    auto it = std::lower_bound(pts.begin(), pts.end(), r,
                               [](const PricePoint& k, double x) { return k.price < x; });
    if (it != pts.end() && it->price == r) return it->rate;
    return upper_env.value(r);
}

double upper_left_limit(const InformationSet& info, DistributionClass cls, double r) {
    return upper_left_limit(info, upper_envelope(info, cls), r);
}

PiecewiseCcdf worst_case_distribution(double r_star, const InformationSet& info,
                                      DistributionClass cls) {
    require_feasible(info, cls);
    const double q_star = upper_left_limit(info, cls, r_star);
    const auto extended = info.with_point(r_star, q_star);
    if (!is_feasible(extended, cls) ||
        r_star * q_star < info.max_knot_revenue() - 1e-12)
        throw std::invalid_argument(
            "worst_case_distribution: r_star is not a feasible optimal price");
    return lower_envelope(extended, cls);
}

double revenue(const PiecewiseCcdf& ccdf, double p) { return p * ccdf.left_limit(p); }

double optimal_revenue_of_envelope(const InformationSet& info, DistributionClass cls) {
    require_feasible(info, cls);
    return info.max_knot_revenue();
}

double constant_virtual_value(double alpha, double beta, double s) {
    if (!(beta > 0.0)) throw std::domain_error("constant_virtual_value: beta must be > 0");
    if (alpha < 0.0) throw std::domain_error("constant_virtual_value: alpha must be >= 0");
    return s - (1.0 + alpha) / beta;
}

} // namespace robustpricing
