#include "robustpricing/json_io.hpp"

#include <fstream>

namespace robustpricing {

using nlohmann::json;

namespace {

std::vector<PricePoint> parse_pairs(const json& arr, const char* what) {
    if (!arr.is_array()) throw std::invalid_argument(std::string(what) + ": expected array");
    std::vector<PricePoint> out;
    out.reserve(arr.size());
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw std::invalid_argument(std::string(what) + ": expected [number, number] pairs");
        out.push_back({e[0].get<double>(), e[1].get<double>()});
    }
    return out;
}

json dump_pairs(const std::vector<PricePoint>& pts) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back({p.price, p.rate});
    return arr;
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return json::parse(in);
}

} // namespace

InformationSet information_set_from_json(const json& j) {
    if (!j.is_object() || !j.contains("v_lo") || !j.contains("v_hi"))
        throw std::invalid_argument("information set: need v_lo, v_hi");
    Bounds bounds(j.at("v_lo").get<double>(), j.at("v_hi").get<double>());
    std::vector<PricePoint> pts;
    if (j.contains("points")) pts = parse_pairs(j.at("points"), "information set points");
    return InformationSet(bounds, std::move(pts));
}

json information_set_to_json(const InformationSet& info) {
    return json{{"v_lo", info.bounds().v_lo},
                {"v_hi", info.bounds().v_hi},
                {"points", dump_pairs(info.points())}};
}

PricingMechanism mechanism_from_json(const json& j) {
    if (!j.is_object() || !j.contains("atoms"))
        throw std::invalid_argument("mechanism: need atoms");
    PricingMechanism mech{parse_pairs(j.at("atoms"), "mechanism atoms")};
    validate_mechanism(mech);
    return mech;
}

json mechanism_to_json(const PricingMechanism& mech) {
    return json{{"atoms", dump_pairs(mech.atoms)}};
}

namespace {

json segment_to_json(const SegmentCcdf& seg) {
    return json{{"kind", seg.kind == SegmentCcdf::Kind::GeneralFlat ? "flat" : "gamma"},
                {"s", seg.s},
                {"q_s", seg.q_s},
                {"s_end", seg.s_end},
                {"q_end", seg.q_end}};
}

SegmentCcdf segment_from_json(const json& j) {
    SegmentCcdf seg;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "flat")
        seg.kind = SegmentCcdf::Kind::GeneralFlat;
    else if (kind == "gamma")
        seg.kind = SegmentCcdf::Kind::RegularGammaLinear;
    else
        throw std::invalid_argument("segment: unknown kind " + kind);
    seg.s = j.at("s").get<double>();
    seg.q_s = j.at("q_s").get<double>();
    seg.s_end = j.at("s_end").get<double>();
    seg.q_end = j.at("q_end").get<double>();
    return seg;
}

} // namespace

json ccdf_to_json(const PiecewiseCcdf& ccdf) {
    json intervals = json::array();
    for (const auto& iv : ccdf.intervals()) {
        json parts = json::array();
        for (const auto& seg : iv.parts) parts.push_back(segment_to_json(seg));
        intervals.push_back(std::move(parts));
    }
    return json{{"v_lo", ccdf.bounds().v_lo},
                {"v_hi", ccdf.bounds().v_hi},
                {"knots", dump_pairs(ccdf.knots())},
                {"intervals", std::move(intervals)}};
}

PiecewiseCcdf ccdf_from_json(const json& j) {
    Bounds bounds(j.at("v_lo").get<double>(), j.at("v_hi").get<double>());
    auto knots = parse_pairs(j.at("knots"), "ccdf knots");
    std::vector<PiecewiseCcdf::Interval> intervals;
    for (const auto& parts : j.at("intervals")) {
        PiecewiseCcdf::Interval iv;
        for (const auto& seg : parts) iv.parts.push_back(segment_from_json(seg));
        intervals.push_back(std::move(iv));
    }
    return PiecewiseCcdf(bounds, std::move(knots), std::move(intervals));
}

InformationSet load_information_set(const std::string& path) {
    return information_set_from_json(load_file(path));
}

PricingMechanism load_mechanism(const std::string& path) {
    return mechanism_from_json(load_file(path));
}

} // namespace robustpricing
