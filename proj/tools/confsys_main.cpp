#include "confsys/counting.hpp"
#include "confsys/descriptor.hpp"
#include "confsys/linear.hpp"
#include "confsys/random_sparse.hpp"
#include "confsys/util.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace confsys;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "confsys/1";

struct GlobalOpts {
    std::uint64_t seed = 0;
    int workers = 1;
    long long budget_nodes = 0;
    long long budget_solutions = 0;
    std::string out = "-";
    std::string format = "json";

    Budget budget() const {
        Budget b;
        if (budget_nodes > 0) b.max_search_nodes = budget_nodes;
        if (budget_solutions > 0) {
            b.max_solutions = budget_solutions;
            b.max_enumeration = std::max(b.max_enumeration, budget_solutions);
        }
        return b;
    }
};

void emit(const GlobalOpts& g, const std::string& payload) {
    if (g.out == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + g.out);
    f << payload;
}

// doubles go through fmt_double so payloads are byte-stable across runs
ordered_json jdouble(double v) { return ordered_json(fmt_double(v)); }

ordered_json system_summary(const FamilyInstance& fi) {
    ordered_json j;
    j["ambient"] = fi.system.ambient().label;
    j["ambient_size"] = fi.system.ambient().size;
    j["degree"] = fi.system.degree();
    j["source"] = fi.name;
    j["size"] = fi.system.size();
    j["sk_size"] = fi.system.sk_count();
    j["partition"] = fi.system.class_counts();
    if (fi.system.ambient().is_group()) {
        j["invariant"] = fi.system.size() > 0 && is_invariant(fi.system);
    } else {
        j["invariant"] = "n/a (ambient is not a group)";
    }
    if (fi.system.sk_count() > 0) {
        RhoUniformity rho = rho_uniformity(fi.system);
        ordered_json jr;
        jr["rho"] = rat_string(rho.rho);
        ordered_json u = ordered_json::array();
        for (int c : rho.argmin_U) u.push_back(c + 1);
        jr["argmin_U"] = u;
        jr["min_fiber"] = rho.min_fiber;
        jr["max_fiber"] = rho.max_fiber;
        j["rho_uniformity"] = jr;
    } else {
        j["rho_uniformity"] = "undefined (S^(k) empty)";
    }
    if (!fi.params.empty()) j["params"] = fi.params;
    if (!fi.notes.empty()) j["notes"] = fi.notes;
    if (!fi.expected.empty()) {
        ordered_json je;
        for (auto& [k, v] : fi.expected) je[k] = jdouble(v);
        j["expected"] = je;
    }
    return j;
}

int cmd_describe(const GlobalOpts& g, const std::string& system_file) {
    json spec = load_json_file(system_file);
    ordered_json out;
    out["schema"] = kSchema;
    out["command"] = "describe";
    if (spec.contains("instances")) {
        std::vector<FamilyInstance> instances;
        std::vector<std::string> labels;
        for (const auto& s : spec["instances"]) {
            instances.push_back(parse_system(s, g.budget(), g.seed));
            labels.push_back(instances.back().name);
        }
        ordered_json arr = ordered_json::array();
        std::vector<const ConfigSystem*> ptrs;
        for (auto& fi : instances) {
            arr.push_back(system_summary(fi));
            ptrs.push_back(&fi.system);
        }
        out["instances"] = arr;
        NormalityReport rep = normality_report(ptrs, labels);
        ordered_json jn;
        ordered_json rows = ordered_json::array();
        for (const auto& r : rep.rows) {
            ordered_json jr;
            jr["label"] = r.label;
            jr["ambient_size"] = r.ambient_size;
            jr["S"] = r.s_size;
            jr["Sk"] = r.sk_size;
            jr["G_over_S"] = jdouble(r.g_over_s);
            jr["Gk_over_S"] = jdouble(r.gk_over_s);
            jr["Sk_over_S"] = jdouble(r.sk_over_s);
            rows.push_back(jr);
        }
        jn["rows"] = rows;
        jn["c2_ratio_to_zero"] = rep.c2_ratio_to_zero;
        jn["c2_ratio_to_inf"] = rep.c2_ratio_to_inf;
        jn["c3_to_one"] = rep.c3_to_one;
        jn["c4_note"] = rep.c4_note;
        out["normality"] = jn;
    } else {
        FamilyInstance fi = parse_system(spec, g.budget(), g.seed);
        out["system"] = system_summary(fi);
    }
    emit(g, out.dump(2) + "\n");
    return 0;
}

ordered_json freedom_json(const FreedomTable& ft) {
    ordered_json j;
    j["k"] = ft.k;
    j["alpha"] = ft.alpha;
    j["alpha_k"] = ft.alpha_k;
    j["s_empty"] = ft.s_empty;
    j["sk_empty"] = ft.sk_empty;
    auto arg = [](const std::vector<std::vector<ArgmaxEntry>>& a) {
        ordered_json out = ordered_json::array();
        for (const auto& per_l : a) {
            ordered_json lvl = ordered_json::array();
            for (const auto& e : per_l) {
                ordered_json je;
                ordered_json u = ordered_json::array();
                for (int c : e.U) u.push_back(c + 1); // report 1-based coordinates
                je["U"] = u;
                je["witness"] = e.witness;
                je["tie_tuples"] = e.tie_tuples;
                lvl.push_back(je);
            }
            out.push_back(lvl);
        }
        return out;
    };
    j["argmax"] = arg(ft.argmax);
    j["argmax_k"] = arg(ft.argmax_k);
    return j;
}

int cmd_alphas(const GlobalOpts& g, const std::string& system_file) {
    FamilyInstance fi = parse_system(load_json_file(system_file), g.budget(), g.seed);
    FreedomTable ft = freedom_table(fi.system, g.workers);
    if (g.format == "csv") {
        std::string csv = "# schema=" + std::string(kSchema) + " command=alphas\n";
        csv += "l,alpha,alpha_k\n";
        for (int l = 1; l <= ft.k; ++l)
            csv += std::to_string(l) + "," + std::to_string(ft.alpha[l - 1]) + "," +
                   std::to_string(ft.alpha_k[l - 1]) + "\n";
        emit(g, csv);
        return 0;
    }
    ordered_json out;
    out["schema"] = kSchema;
    out["command"] = "alphas";
    out["freedom_table"] = freedom_json(ft);
    emit(g, out.dump(2) + "\n");
    return 0;
}

int cmd_ma(const GlobalOpts& g, const std::string& matrix_file) {
    json spec = load_json_file(matrix_file);
    const json& rows_json = spec.is_array() ? spec : spec.at("matrix");
    std::vector<std::vector<long long>> rows;
    for (const auto& r : rows_json) {
        std::vector<long long> row;
        for (const auto& v : r) row.push_back(v.get<long long>());
        rows.push_back(std::move(row));
    }
    IntegerMatrix a = IntegerMatrix::from_rows(rows);
    MASummary s = compute_m_a(a);
    ordered_json out;
    out["schema"] = kSchema;
    out["command"] = "ma";
    out["m_A"] = {{"num", boost::multiprecision::numerator(s.m_a).str()},
                  {"den", boost::multiprecision::denominator(s.m_a).str()}};
    out["rank"] = s.rank;
    out["threshold"] = s.threshold;
    out["argmax_q"] = s.argmax_q;
    ordered_json b = ordered_json::array();
    for (int c : s.argmax_b) b.push_back(c + 1);
    out["argmax_B"] = b;
    out["skipped_B_count"] = s.skipped_b.size();
    ordered_json table = ordered_json::array();
    for (const auto& e : s.table) {
        ordered_json je;
        ordered_json jb = ordered_json::array();
        for (int c : e.b) jb.push_back(c + 1);
        je["B"] = jb;
        je["h_B"] = e.h_b;
        if (e.skipped)
            je["skipped"] = true;
        else
            je["value"] = rat_string(e.value);
        table.push_back(je);
    }
    out["table"] = table;
    emit(g, out.dump(2) + "\n");
    return 0;
}

int cmd_count(const GlobalOpts& g, const std::string& system_file, long long t_min, long long t_max,
              double beta, double c_const, bool with_oracle, double gamma_hat, double vprop_eps) {
    FamilyInstance fi = parse_system(load_json_file(system_file), g.budget(), g.seed);
    if (t_max < 0) t_max = t_min;
    std::optional<double> gamma;
    if (gamma_hat >= 0.0) gamma = gamma_hat;
    if (!gamma && vprop_eps > 0.0) {
        // paper-constant mode from a fresh supersaturation estimate: exhaustive
        // when the subset count is small, sampled otherwise
        long long n = fi.system.ambient().size;
        long long m = static_cast<long long>(std::ceil(vprop_eps * static_cast<double>(n) - 1e-9));
        bool exhaustive = big_binomial(n, m) <= 200000;
        VPropertyEstimate est =
            v_property_estimate(fi.system, vprop_eps, exhaustive, exhaustive ? 0 : 200, g.seed);
        gamma = boost::multiprecision::numerator(est.gamma_hat).convert_to<double>() /
                boost::multiprecision::denominator(est.gamma_hat).convert_to<double>();
    }
    std::string csv = "# schema=" + std::string(kSchema) + " command=count beta=" + fmt_double(beta) +
                      " C=" + fmt_double(c_const) + "\n";
    csv += "t,oracle_count_or_NA,log2_bound_raw,log2_bound_clean,in_range_flag\n";
    ordered_json rows = ordered_json::array();
    for (long long t = t_min; t <= t_max; ++t) {
        std::optional<BigInt> oracle;
        if (with_oracle) oracle = count_free_sets(fi.system, t, g.budget());
        BoundReport r = bound_report(fi.system, beta, t, c_const, oracle, g.workers, gamma);
        csv += std::to_string(t) + "," + (oracle ? oracle->str() : "NA") + "," +
               fmt_double(r.log2_bound_raw) + "," + fmt_double(r.log2_bound_clean) + "," +
               (r.in_range ? "1" : "0") + "\n";
        ordered_json jr;
        jr["t"] = t;
        jr["oracle"] = oracle ? ordered_json(oracle->str()) : ordered_json(nullptr);
        jr["log2_bound_raw"] = jdouble(r.log2_bound_raw);
        jr["log2_bound_clean"] = jdouble(r.log2_bound_clean);
        jr["bound_clean"] = r.bound_clean.str();
        jr["t_lo"] = r.t_lo;
        jr["t_hi"] = r.t_hi;
        jr["in_range"] = r.in_range;
        if (!r.verdict.empty()) jr["verdict"] = r.verdict;
        if (r.paper_constant_c) {
            ordered_json jc;
            jc["C"] = jdouble(*r.paper_constant_c);
            jc["xi_hat"] = jdouble(r.xi_hat);
            jc["epsilon_hat"] = jdouble(r.epsilon_hat);
            jc["note"] = "estimate via empirical gamma; the underlying constant is nonconstructive";
            jr["paper_constant"] = jc;
        }
        rows.push_back(jr);
    }
    if (g.format == "csv") {
        emit(g, csv);
    } else {
        ordered_json out;
        out["schema"] = kSchema;
        out["command"] = "count";
        out["beta"] = jdouble(beta);
        out["C"] = jdouble(c_const);
        out["rows"] = rows;
        emit(g, out.dump(2) + "\n");
    }
    return 0;
}

int cmd_threshold(const GlobalOpts& g, const std::string& system_file, bool unrestricted) {
    FamilyInstance fi = parse_system(load_json_file(system_file), g.budget(), g.seed);
    ThresholdFormulas tf = threshold_formulas(fi.system, !unrestricted, g.workers);
    ordered_json out;
    out["schema"] = kSchema;
    out["command"] = "threshold";
    out["restricted"] = tf.restricted;
    out["p_one"] = jdouble(tf.p_one);
    out["p_one_argmax_ell"] = tf.p_one_argmax_ell;
    out["p_zero"] = jdouble(tf.p_zero);
    ordered_json u = ordered_json::array();
    for (int c : tf.p_zero_argmax_u) u.push_back(c + 1);
    out["p_zero_argmax_U"] = u;
    out["p_small"] = jdouble(tf.p_small);
    emit(g, out.dump(2) + "\n");
    return 0;
}

std::vector<double> make_p_grid(const json& cfg, const ConfigSystem& sys, bool restricted, int workers) {
    std::vector<double> grid;
    if (cfg.contains("p_grid")) {
        for (const auto& v : cfg["p_grid"]) grid.push_back(v.get<double>());
        return grid;
    }
    if (!cfg.contains("p_spec")) throw ConfigError("experiment needs \"p_grid\" or \"p_spec\"");
    const json& ps = cfg["p_spec"];
    std::string source = ps.value("exponent_source", "one");
    ThresholdFormulas tf = threshold_formulas(sys, restricted, workers);
    double base = source == "one" ? tf.p_one : source == "zero" ? tf.p_zero : tf.p_small;
    std::vector<double> cs;
    if (ps.contains("c") && ps["c"].is_array()) {
        for (const auto& v : ps["c"]) cs.push_back(v.get<double>());
    } else {
        cs.push_back(ps.value("c", 1.0));
    }
    for (double c : cs) grid.push_back(std::min(1.0, c * base));
    return grid;
}

int cmd_montecarlo(const GlobalOpts& g, const std::string& config_file) {
    json cfg = load_json_file(config_file);
    if (!cfg.contains("system")) throw ConfigError("montecarlo config needs \"system\"");
    FamilyInstance fi = parse_system(cfg["system"], g.budget(), g.seed);
    double delta = cfg.value("delta", 0.5);
    long long trials = cfg.value("trials", 100LL);
    std::uint64_t seed = cfg.contains("seed") ? cfg["seed"].get<std::uint64_t>() : g.seed;
    bool restricted = cfg.value("restricted", true);
    std::vector<double> grid = make_p_grid(cfg, fi.system, restricted, g.workers);
    StabilityReport rep = montecarlo_stability(fi.system, delta, grid, trials, seed, g.workers, g.budget());
    if (g.format == "csv") {
        std::string csv = "# schema=" + std::string(kSchema) + " command=montecarlo delta=" +
                          fmt_double(delta) + " seed=" + std::to_string(seed) + "\n";
        csv += "p,trials,est,stderr,mode\n";
        for (const auto& pt : rep.points)
            csv += fmt_double(pt.p) + "," + std::to_string(pt.trials) + "," + fmt_double(pt.estimate) +
                   "," + fmt_double(pt.stderr_) + "," + pt.mode + "\n";
        emit(g, csv);
        return 0;
    }
    ordered_json out;
    out["schema"] = kSchema;
    out["command"] = "montecarlo";
    out["delta"] = jdouble(delta);
    out["seed"] = seed;
    ordered_json pts = ordered_json::array();
    for (const auto& pt : rep.points) {
        ordered_json jp;
        jp["p"] = jdouble(pt.p);
        jp["trials"] = pt.trials;
        jp["stable"] = pt.stable;
        jp["est"] = jdouble(pt.estimate);
        jp["stderr"] = jdouble(pt.stderr_);
        jp["degenerate"] = pt.degenerate;
        jp["fallback"] = pt.fallback;
        jp["mode"] = pt.mode;
        pts.push_back(jp);
    }
    out["points"] = pts;
    out["monotone_within_noise"] = rep.monotone_within_noise;
    if (rep.crossing_p) out["crossing_p"] = jdouble(*rep.crossing_p);
    emit(g, out.dump(2) + "\n");
    return 0;
}

int cmd_concentration(const GlobalOpts& g, const std::string& config_file) {
    json cfg = load_json_file(config_file);
    if (!cfg.contains("system")) throw ConfigError("concentration config needs \"system\"");
    FamilyInstance fi = parse_system(cfg["system"], g.budget(), g.seed);
    if (!cfg.contains("U")) throw ConfigError("concentration config needs \"U\" (1-based coordinates)");
    std::vector<int> u;
    for (const auto& v : cfg["U"]) u.push_back(v.get<int>() - 1);
    double p = cfg.value("p", 0.5);
    long long trials = cfg.value("trials", 100LL);
    std::uint64_t seed = cfg.contains("seed") ? cfg["seed"].get<std::uint64_t>() : g.seed;
    ConcentrationReport rep = concentration_check(fi.system, u, p, trials, seed, g.budget());
    if (g.format == "csv") {
        std::string csv = "# schema=" + std::string(kSchema) + " command=concentration seed=" +
                          std::to_string(seed) + "\n";
        csv += "p,trials,image,expectation,mean,variance,rel_dev_median,rel_dev_q90\n";
        csv += fmt_double(rep.p) + "," + std::to_string(rep.trials) + "," +
               std::to_string(rep.image_size) + "," + fmt_double(rep.expectation) + "," +
               fmt_double(rep.mean) + "," + fmt_double(rep.variance) + "," +
               fmt_double(rep.rel_dev_median) + "," + fmt_double(rep.rel_dev_q90) + "\n";
        emit(g, csv);
        return 0;
    }
    ordered_json out;
    out["schema"] = kSchema;
    out["command"] = "concentration";
    ordered_json ju = ordered_json::array();
    for (int c : rep.U) ju.push_back(c + 1);
    out["U"] = ju;
    out["p"] = jdouble(rep.p);
    out["trials"] = rep.trials;
    out["image_size"] = rep.image_size;
    out["expectation"] = jdouble(rep.expectation);
    out["mean"] = jdouble(rep.mean);
    out["variance"] = jdouble(rep.variance);
    out["rel_dev_median"] = jdouble(rep.rel_dev_median);
    out["rel_dev_q90"] = jdouble(rep.rel_dev_q90);
    out["seed"] = seed;
    emit(g, out.dump(2) + "\n");
    return 0;
}

double sweep_metric(const std::string& name, FamilyInstance& fi, const json& cfg, const GlobalOpts& g) {
    if (name.rfind("family:", 0) == 0) {
        std::string key = name.substr(7);
        auto it = fi.metrics.find(key);
        if (it == fi.metrics.end()) throw ConfigError("family metric not available: " + key);
        return it->second;
    }
    bool restricted = cfg.value("restricted", true);
    if (name == "p_one" || name == "p_zero" || name == "p_small") {
        ThresholdFormulas tf = threshold_formulas(fi.system, restricted, g.workers);
        return name == "p_one" ? tf.p_one : name == "p_zero" ? tf.p_zero : tf.p_small;
    }
    if (name == "t_lo" || name == "t_lo_ratio") {
        TRange tr = t_range(fi.system, cfg.value("delta", 0.5), cfg.value("C", 1.0), g.workers);
        return static_cast<double>(name == "t_lo" ? tr.t_lo : tr.t_lo_ratio);
    }
    if (name == "size") return static_cast<double>(fi.system.size());
    if (name == "sk_size") return static_cast<double>(fi.system.sk_count());
    if (name == "rho") {
        RhoUniformity rho = rho_uniformity(fi.system);
        return boost::multiprecision::numerator(rho.rho).convert_to<double>() /
               boost::multiprecision::denominator(rho.rho).convert_to<double>();
    }
    throw ConfigError("unknown sweep metric: " + name);
}

int cmd_sweep(const GlobalOpts& g, const std::string& config_file) {
    json cfg = load_json_file(config_file);
    if (!cfg.contains("family")) throw ConfigError("sweep config needs \"family\"");
    if (!cfg.contains("param") || !cfg.contains("values"))
        throw ConfigError("sweep config needs \"param\" and \"values\"");
    std::vector<long long> values;
    for (const auto& v : cfg["values"]) values.push_back(v.get<long long>());
    if (values.size() < 3) throw ConfigError("need >= 3 points for regression");
    std::vector<std::string> metrics;
    for (const auto& m : cfg.value("metrics", json::array())) metrics.push_back(m.get<std::string>());
    if (metrics.empty()) metrics = {"size"};

    ordered_json out;
    out["schema"] = kSchema;
    out["command"] = "sweep";
    out["family"] = cfg["family"];
    out["param"] = cfg["param"];
    ordered_json instances = ordered_json::array();
    std::map<std::string, std::vector<double>> series;
    for (long long v : values) {
        json params = cfg.value("base_params", json::object());
        params[cfg["param"].get<std::string>()] = v;
        FamilyInstance fi = build_family(cfg["family"].get<std::string>(), params, g.budget(), g.seed);
        ordered_json ji;
        ji[cfg["param"].get<std::string>()] = v;
        for (const auto& m : metrics) {
            double val = sweep_metric(m, fi, cfg, g);
            series[m].push_back(val);
            ji[m] = jdouble(val);
        }
        instances.push_back(ji);
    }
    out["instances"] = instances;
    ordered_json slopes;
    std::vector<double> lx;
    for (long long v : values) lx.push_back(std::log(static_cast<double>(v)));
    for (const auto& m : metrics) {
        std::vector<double> ly;
        for (double v : series[m]) ly.push_back(std::log(v));
        LinRegression reg = linear_regression(lx, ly);
        ordered_json jr;
        jr["slope"] = jdouble(reg.slope);
        jr["stderr"] = jdouble(reg.slope_stderr);
        jr["ci95_lo"] = jdouble(reg.slope - 1.96 * reg.slope_stderr);
        jr["ci95_hi"] = jdouble(reg.slope + 1.96 * reg.slope_stderr);
        slopes[m] = jr;
    }
    out["loglog_slopes"] = slopes;
    emit(g, out.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"configuration-system toolkit"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--seed", g.seed, "global random seed");
    app.add_option("--workers", g.workers, "worker threads for parallel sections");
    app.add_option("--budget-nodes", g.budget_nodes, "search-node budget");
    app.add_option("--budget-solutions", g.budget_solutions, "materialized-solution budget");
    app.add_option("--out", g.out, "output path ('-' for stdout)");
    app.add_option("--format", g.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    std::string system_file, matrix_file, config_file;
    long long t_min = 0, t_max = -1;
    double beta = 0.5, c_const = 1.0, gamma_hat = -1.0, vprop_eps = 0.0;
    bool with_oracle = true, unrestricted = false;

    auto* describe = app.add_subcommand("describe", "summarize a system");
    describe->add_option("--system", system_file, "system descriptor JSON")->required();

    auto* alphas = app.add_subcommand("alphas", "degrees of freedom");
    alphas->add_option("--system", system_file, "system descriptor JSON")->required();

    auto* ma = app.add_subcommand("ma", "Rodl-Rucinski exponent of an integer matrix");
    ma->add_option("--matrix", matrix_file, "JSON rows or {\"matrix\":rows}")->required();

    auto* count = app.add_subcommand("count", "free-set counts and container bounds");
    count->add_option("--system", system_file, "system descriptor JSON")->required();
    count->add_option("--t", t_min, "single t (or range start)");
    count->add_option("--t-max", t_max, "range end (inclusive)");
    count->add_option("--beta", beta, "beta for the clean bound");
    count->add_option("--C", c_const, "container constant C");
    count->add_flag("--no-oracle", [&with_oracle](std::int64_t) { with_oracle = false; },
                    "skip the exhaustive oracle");
    count->add_option("--gamma-hat", gamma_hat, "supersaturation estimate for paper-constant mode");
    count->add_option("--vprop-eps", vprop_eps, "estimate gamma at this density, then report the paper constant");

    auto* threshold = app.add_subcommand("threshold", "closed-form threshold probabilities");
    threshold->add_option("--system", system_file, "system descriptor JSON")->required();
    threshold->add_flag("--unrestricted", unrestricted, "use the unrestricted alpha table (all of S)");

    auto* montecarlo = app.add_subcommand("montecarlo", "stability estimates over a p-grid");
    montecarlo->add_option("--config", config_file, "experiment JSON")->required();

    auto* concentration = app.add_subcommand("concentration", "projection-intersection concentration");
    concentration->add_option("--config", config_file, "experiment JSON")->required();

    auto* sweep = app.add_subcommand("sweep", "family sweep with log-log regression");
    sweep->add_option("--config", config_file, "sweep JSON")->required();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (describe->parsed()) return cmd_describe(g, system_file);
        if (alphas->parsed()) return cmd_alphas(g, system_file);
        if (ma->parsed()) return cmd_ma(g, matrix_file);
        if (count->parsed()) return cmd_count(g, system_file, t_min, t_max, beta, c_const, with_oracle, gamma_hat, vprop_eps);
        if (threshold->parsed()) return cmd_threshold(g, system_file, unrestricted);
        if (montecarlo->parsed()) return cmd_montecarlo(g, config_file);
        if (concentration->parsed()) return cmd_concentration(g, config_file);
        if (sweep->parsed()) return cmd_sweep(g, config_file);
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 4;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
