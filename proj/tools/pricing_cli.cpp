// pricing: robust posted-price evaluation and maximin bounds from partial
// conversion-rate data, plus the simulated experimentation studies.

#include "robustpricing/experiments.hpp"
#include "robustpricing/json_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace rp = robustpricing;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumerical = 4;

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 12 significant digits, fixed across platforms; CSVs are regression artifacts
std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

rp::Bounds parse_bounds(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("--bounds expects lo,hi");
    return rp::Bounds(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

rp::DistributionClass parse_class(const std::string& s) {
    if (s == "general") return rp::DistributionClass::General;
    if (s == "regular") return rp::DistributionClass::Regular;
    throw std::invalid_argument("--class must be general or regular");
}

std::string output_path(const std::string& out, const std::string& fallback_name) {
    if (!out.empty()) return out;
    if (const char* dir = std::getenv("PRICING_OUT_DIR"))
        return std::string(dir) + "/" + fallback_name;
    return fallback_name;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot open output file " + path);
    return f;
}

void write_manifest(const std::string& csv_path, const json& config, std::size_t rows,
                    double elapsed_s) {
    json m{{"config", config},
           {"rows", rows},
           {"elapsed_seconds", elapsed_s},
           {"tolerances",
            {{"lp_residual", 1e-8}, {"dominance", 1e-12}, {"feasibility_rel", 1e-9}}}};
    auto f = open_out(csv_path + ".manifest.json");
    f << m.dump(2) << '\n';
}

rp::MaximinResult run_maximin(const rp::InformationSet& info, rp::DistributionClass cls,
                              std::size_t m) {
    const auto res = rp::maximin_lower_bound(info, cls, m);
    if (res.solution.status == rp::SolveStatus::Infeasible)
        throw InfeasibleError("maximin LP infeasible");
    if (res.solution.status != rp::SolveStatus::Optimal)
        throw NumericalError("maximin LP failed numerically");
    return res;
}

class Timer {
  public:
    double seconds() const {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }

  private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path) {
    const auto info = rp::load_information_set(path);
    const bool gen = rp::is_feasible(info, rp::DistributionClass::General);
    const bool reg = rp::is_feasible(info, rp::DistributionClass::Regular);
    std::cout << "general: " << (gen ? "feasible" : "infeasible") << "; regular: "
              << (reg ? "feasible" : "infeasible") << '\n';
    if (reg) {
        std::cout << "slopes:";
        for (double s : rp::regular_slopes(info)) std::cout << ' ' << fmt(s);
        std::cout << '\n';
    }
    return kExitOk;
}

int cmd_maximin(const std::string& path, const std::string& cls_s, std::size_t m,
                const std::string& out, const std::string& lp_dump) {
    const auto info = rp::load_information_set(path);
    const auto cls = parse_class(cls_s);
    if (!rp::is_feasible(info, cls)) throw InfeasibleError("information set infeasible");

    if (!lp_dump.empty()) {
        const auto grid = rp::build_grid(info, cls, m);
        auto f = open_out(lp_dump);
        rp::write_lp_dump(rp::build_lp(info, cls, grid), f);
    }
    const auto res = run_maximin(info, cls, m);
    json j{{"lambda_star", res.lambda_star},
           {"mechanism", rp::mechanism_to_json(res.mechanism)},
           {"iterations", res.solution.iterations},
           {"grid_size", res.grid.points.size()}};
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        auto f = open_out(out);
        f << j.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_eval(const std::string& data_path, const std::string& mech_path,
             const std::string& cls_s, std::size_t m, double lambda, bool use_lambda,
             const std::string& out) {
    const auto info = rp::load_information_set(data_path);
    const auto mech = rp::load_mechanism(mech_path);
    const auto cls = parse_class(cls_s);
    if (!rp::is_feasible(info, cls)) throw InfeasibleError("information set infeasible");

    const auto grid = rp::build_grid(info, cls, m);
    json j;
    if (use_lambda) {
        const auto r = rp::worst_case_lambda_regret(mech, info, cls, lambda, grid.points);
        j = {{"lambda", lambda}, {"regret", r.value}, {"r_star", r.r_star}};
    } else {
        const auto r = rp::worst_case_ratio(mech, info, cls, grid.points);
        j = {{"ratio", r.value}, {"r_star", r.r_star}};
    }
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        auto f = open_out(out);
        f << j.dump(2) << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// Studies. Rows stream to the CSV as cells finish; wall time goes to the
// manifest only so reruns stay byte-identical.

struct StudyConfig {
    rp::Bounds bounds{1.0, 100.0};
    std::string cls_s = "regular";
    std::size_t m = 400;
    double eps = 0.01;
    double p1 = 10.0;
    std::vector<double> q1 = {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99};
    std::size_t rows = 41;
    std::size_t p2_count = 16;
    std::size_t q2_count = 8;
    std::size_t instances = 100;
    std::uint64_t seed = 1;
    std::size_t budget = 0; // ternary budget override, queries
    std::string out;
};

json study_config_json(const char* study, const StudyConfig& c) {
    return json{{"study", study},
                {"bounds", {c.bounds.v_lo, c.bounds.v_hi}},
                {"class", c.cls_s},
                {"M", c.m},
                {"eps", c.eps},
                {"p1", c.p1},
                {"q1", c.q1},
                {"rows", c.rows},
                {"p2_count", c.p2_count},
                {"q2_count", c.q2_count},
                {"instances", c.instances},
                {"seed", c.seed},
                {"budget", c.budget}};
}

int study_gradient(const StudyConfig& c) {
    Timer timer;
    const auto cls = parse_class(c.cls_s);
    const auto path = output_path(c.out, "gradient.csv");
    auto csv = open_out(path);
    csv << "q1,q_eps,g_eps,feasible,lambda_star\n";
    std::size_t n = 0;
    for (double q1 : c.q1) {
        std::vector<double> q_eps_grid;
        for (std::size_t k = 0; k < c.rows; ++k)
            q_eps_grid.push_back(q1 * static_cast<double>(k) /
                                 static_cast<double>(c.rows - 1));
        const auto rows = rp::gradient_value_study(c.p1, q1, c.eps, q_eps_grid, cls,
                                                   c.bounds, c.m);
        for (const auto& r : rows) {
            csv << fmt(q1) << ',' << fmt(r.q_eps) << ',' << fmt(r.g_eps) << ','
                << (r.feasible ? 1 : 0) << ',' << (r.feasible ? fmt(r.lambda_star) : "")
                << '\n';
            csv.flush();
            ++n;
        }
    }
    write_manifest(path, study_config_json("gradient", c), n, timer.seconds());
    return kExitOk;
}

int study_gradient_sign(const StudyConfig& c) {
    Timer timer;
    const auto cls = parse_class(c.cls_s);
    const auto path = output_path(c.out, "gradient_sign.csv");
    auto csv = open_out(path);
    csv << "q1,lambda_base,lambda_negative,lambda_positive\n";
    std::size_t n = 0;
    for (double q1 : c.q1) {
        rp::InformationSet info(c.bounds, {{c.p1, q1}});
        const double base = run_maximin(info, cls, c.m).lambda_star;
        const double neg = rp::gradient_sign_value(c.p1, q1, rp::GradientSign::Negative,
                                                   cls, c.bounds, c.m);
        const double pos = rp::gradient_sign_value(c.p1, q1, rp::GradientSign::Positive,
                                                   cls, c.bounds, c.m);
        csv << fmt(q1) << ',' << fmt(base) << ',' << fmt(neg) << ',' << fmt(pos) << '\n';
        csv.flush();
        ++n;
    }
    write_manifest(path, study_config_json("gradient-sign", c), n, timer.seconds());
    return kExitOk;
}

int study_second_price(const StudyConfig& c) {
    Timer timer;
    const auto cls = parse_class(c.cls_s);
    const auto path = output_path(c.out, "second_price.csv");
    auto csv = open_out(path);
    csv << "q1,lambda_single,p2_star,guaranteed_ratio,improvement\n";
    std::size_t n = 0;
    for (double q1 : c.q1) {
        const auto res = rp::best_second_price(c.p1, q1, cls, c.bounds, c.p2_count,
                                               c.q2_count, c.m);
        csv << fmt(q1) << ',' << fmt(res.single_point_lambda) << ',' << fmt(res.p2_star)
            << ',' << fmt(res.guaranteed_ratio) << ','
            << fmt(res.guaranteed_ratio - res.single_point_lambda) << '\n';
        csv.flush();
        ++n;
    }
    write_manifest(path, study_config_json("second-price", c), n, timer.seconds());
    return kExitOk;
}

int study_ternary(const StudyConfig& c) {
    Timer timer;
    const auto path = output_path(c.out, "ternary.csv");
    auto csv = open_out(path);
    csv << "kind,instance,a,b,criterion,queries,rounds,reached,lambda_star,true_ratio\n";
    const std::size_t budget =
        c.budget > 0 ? c.budget : 2 * rp::ternary_budget_rounds(c.bounds, c.eps);
    std::size_t n = 0;

    for (auto kind : {rp::DemandModel::Kind::Linear, rp::DemandModel::Kind::Exponential}) {
        const char* kind_name = kind == rp::DemandModel::Kind::Linear ? "linear" : "exponential";
        // oversample, then keep the first `instances` models whose support fits
        // the bounds (the regular criterion needs full conversion at v_lo)
        auto models = rp::sample_demand_models(kind, 4 * c.instances + 16, c.seed, c.bounds);
        std::size_t kept = 0;
        for (const auto& model : models) {
            if (kept == c.instances) break;
            if (!model.supported_within_bounds()) continue;
            ++kept;
            rp::InformationSet init(c.bounds, {});
            for (auto crit : {rp::StoppingCriterion::Regular,
                              rp::StoppingCriterion::GeneralUnimodal}) {
                const auto res = rp::meta_dynamic_pricing(rp::make_ternary_explorer(model),
                                                          init, crit, c.eps, c.m, budget);
                const double ratio = rp::model_ratio(res.mechanism, model);
                csv << kind_name << ',' << kept << ',' << fmt(model.a) << ','
                    << fmt(model.b) << ','
                    << (crit == rp::StoppingCriterion::Regular ? "regular" : "general-unimodal")
                    << ',' << res.queries_used << ',' << res.rounds << ','
                    << (res.reached_threshold ? 1 : 0) << ',' << fmt(res.lambda_star)
                    << ',' << fmt(ratio) << '\n';
                csv.flush();
                ++n;
            }
        }
    }
    write_manifest(path, study_config_json("ternary", c), n, timer.seconds());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust pricing from conversion-rate data"};
    app.require_subcommand(1);

    std::string data_path, mech_path, cls_s = "general", bounds_s, out, lp_dump;
    std::size_t m = 500;
    double lambda = 1.0;
    bool use_lambda = false;

    auto* validate = app.add_subcommand("validate", "Check class feasibility of a dataset");
    validate->add_option("dataset", data_path)->required();

    auto* maximin = app.add_subcommand("maximin", "Maximin mechanism lower bound (LP)");
    maximin->add_option("dataset", data_path)->required();
    maximin->add_option("--class", cls_s, "general|regular");
    maximin->add_option("--M", m, "grid resolution");
    maximin->add_option("--out", out);
    maximin->add_option("--lp-dump", lp_dump, "write the LP in tabular text form");

    auto* eval = app.add_subcommand("eval", "Worst-case ratio of a mechanism");
    eval->add_option("dataset", data_path)->required();
    eval->add_option("mechanism", mech_path)->required();
    eval->add_option("--class", cls_s, "general|regular");
    eval->add_option("--M", m, "search grid resolution");
    eval->add_option("--lambda", lambda, "report lambda-regret instead of the ratio")
        ->check(CLI::Range(0.0, 1.0));
    eval->add_flag("--regret", use_lambda, "use lambda-regret objective");
    eval->add_option("--out", out);

    StudyConfig sc;
    std::string study_name, study_bounds_s;
    auto* study = app.add_subcommand("study", "Run an experimentation study");
    study->add_option("name", study_name, "gradient|gradient-sign|second-price|ternary")
        ->required()
        ->check(CLI::IsMember({"gradient", "gradient-sign", "second-price", "ternary"}));
    study->add_option("--class", sc.cls_s, "general|regular");
    study->add_option("--M", sc.m);
    study->add_option("--eps", sc.eps)->check(CLI::Range(1e-9, 0.999999));
    study->add_option("--seed", sc.seed);
    study->add_option("--bounds", study_bounds_s, "lo,hi");
    study->add_option("--p1", sc.p1);
    study->add_option("--q1", sc.q1, "q1 sweep values")->delimiter(',');
    study->add_option("--rows", sc.rows, "q_eps rows per q1 (gradient)");
    study->add_option("--p2-count", sc.p2_count);
    study->add_option("--q2-count", sc.q2_count);
    study->add_option("--instances", sc.instances, "instances per family (ternary)");
    study->add_option("--budget", sc.budget, "ternary query budget override");
    study->add_option("--out", sc.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        if (validate->parsed()) return cmd_validate(data_path);
        if (maximin->parsed()) {
            if (!bounds_s.empty()) parse_bounds(bounds_s);
            return cmd_maximin(data_path, cls_s, m, out, lp_dump);
        }
        if (eval->parsed()) return cmd_eval(data_path, mech_path, cls_s, m, lambda,
                                            use_lambda, out);
        if (study->parsed()) {
            if (study_name == "ternary" && study_bounds_s.empty()) sc.bounds = rp::Bounds(0.0, 1.0);
            if (!study_bounds_s.empty()) sc.bounds = parse_bounds(study_bounds_s);
            if (study_name == "gradient") return study_gradient(sc);
            if (study_name == "gradient-sign") return study_gradient_sign(sc);
            if (study_name == "second-price") return study_second_price(sc);
            return study_ternary(sc);
        }
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
