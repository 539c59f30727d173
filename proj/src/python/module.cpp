#include "robustpricing/experiments.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace robustpricing;

namespace {

InformationSet make_info(double v_lo, double v_hi,
                         const std::vector<std::pair<double, double>>& points) {
    std::vector<PricePoint> pts;
    pts.reserve(points.size());
    for (const auto& [p, q] : points) pts.push_back({p, q});
    return InformationSet(Bounds(v_lo, v_hi), std::move(pts));
}

std::vector<std::pair<double, double>> atoms_out(const PricingMechanism& mech) {
    std::vector<std::pair<double, double>> out;
    out.reserve(mech.atoms.size());
    for (const auto& a : mech.atoms) out.emplace_back(a.price, a.rate);
    return out;
}

PricingMechanism mech_in(const std::vector<std::pair<double, double>>& atoms) {
    PricingMechanism mech;
    for (const auto& [p, w] : atoms) mech.atoms.push_back({p, w});
    validate_mechanism(mech);
    return mech;
}

} // namespace

PYBIND11_MODULE(_robustpricing, m) {
    m.doc() = "Robust posted-price evaluation from conversion-rate data";

    py::enum_<DistributionClass>(m, "DistributionClass")
        .value("General", DistributionClass::General)
        .value("Regular", DistributionClass::Regular);

    py::class_<InformationSet>(m, "InformationSet")
        .def(py::init(&make_info), py::arg("v_lo"), py::arg("v_hi"), py::arg("points"))
        .def_property_readonly("points",
                               [](const InformationSet& s) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto& p : s.points())
                                       out.emplace_back(p.price, p.rate);
                                   return out;
                               })
        .def("with_point", &InformationSet::with_point)
        .def("max_knot_revenue", &InformationSet::max_knot_revenue);

    m.def("gamma", &robustpricing::gamma);
    m.def("gamma_inv", &gamma_inv);
    m.def("is_feasible", &is_feasible);
    m.def("regular_slopes", &regular_slopes);

    m.def("lower_envelope_value",
          [](const InformationSet& info, DistributionClass cls, double v) {
              return lower_envelope(info, cls).value(v);
          });
    m.def("upper_envelope_value",
          [](const InformationSet& info, DistributionClass cls, double v) {
              return upper_envelope(info, cls).value(v);
          });
    m.def("upper_left_limit",
          py::overload_cast<const InformationSet&, DistributionClass, double>(
              &upper_left_limit));
    m.def("revenue_at", [](const InformationSet& info, DistributionClass cls, double p) {
        return revenue(lower_envelope(info, cls), p);
    });
    m.def("constant_virtual_value", &constant_virtual_value);

    m.def("certify_r_star",
          [](double r, const InformationSet& info, DistributionClass cls) {
              const auto c = certify_r_star(r, info, cls);
              return py::dict(py::arg("r_star") = c.r_star, py::arg("q_star") = c.q_star,
                              py::arg("extended_feasible") = c.extended_feasible,
                              py::arg("dominance") = c.dominance,
                              py::arg("member") = c.member());
          });

    m.def("worst_case_ratio",
          [](const std::vector<std::pair<double, double>>& atoms,
             const InformationSet& info, DistributionClass cls, std::size_t m) {
              const auto grid = build_grid(info, cls, m);
              const auto r = worst_case_ratio(mech_in(atoms), info, cls, grid.points);
              return std::make_pair(r.value, r.r_star);
          });

    m.def("maximin_lower_bound",
          [](const InformationSet& info, DistributionClass cls, std::size_t m) {
              const auto res = maximin_lower_bound(info, cls, m);
              if (res.solution.status != SolveStatus::Optimal)
                  throw std::runtime_error("maximin LP did not reach optimality");
              return py::dict(py::arg("lambda_star") = res.lambda_star,
                              py::arg("atoms") = atoms_out(res.mechanism));
          });

    py::class_<DemandModel>(m, "DemandModel")
        .def(py::init([](const std::string& kind, double a, double b, double v_lo,
                         double v_hi) {
                 DemandModel mod;
                 mod.kind = kind == "linear" ? DemandModel::Kind::Linear
                                             : DemandModel::Kind::Exponential;
                 mod.a = a;
                 mod.b = b;
                 mod.bounds = Bounds(v_lo, v_hi);
                 return mod;
             }),
             py::arg("kind"), py::arg("a"), py::arg("b"), py::arg("v_lo") = 0.0,
             py::arg("v_hi") = 1.0)
        .def("conversion_rate", &DemandModel::conversion_rate)
        .def("optimal_price", &DemandModel::optimal_price)
        .def("optimal_revenue", &DemandModel::optimal_revenue);

    m.def("ternary_search", [](const DemandModel& model, double eps, std::size_t rounds) {
        const auto r = ternary_search(model, eps, rounds);
        std::vector<std::pair<double, double>> qs;
        for (const auto& q : r.queries) qs.emplace_back(q.price, q.rate);
        return py::dict(py::arg("queries") = qs, py::arg("final_price") = r.final_price,
                        py::arg("rounds") = r.rounds);
    }, py::arg("model"), py::arg("eps"), py::arg("rounds") = 0);

    m.def("meta_dynamic_pricing",
          [](const DemandModel& model, const std::string& criterion, double eps,
             std::size_t m_grid, std::size_t budget) {
              InformationSet init(model.bounds, {});
              const auto crit = criterion == "regular"
                                    ? StoppingCriterion::Regular
                                    : StoppingCriterion::GeneralUnimodal;
              const auto r = meta_dynamic_pricing(make_ternary_explorer(model), init,
                                                  crit, eps, m_grid, budget);
              return py::dict(py::arg("queries_used") = r.queries_used,
                              py::arg("reached_threshold") = r.reached_threshold,
                              py::arg("lambda_star") = r.lambda_star,
                              py::arg("atoms") = atoms_out(r.mechanism),
                              py::arg("true_ratio") = model_ratio(r.mechanism, model));
          });
}
