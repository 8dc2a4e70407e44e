// bellkit: Bell-inequality toolkit for Dicke-state mixtures.
//
// Subcommands reproduce the two-setting plane criterion table, verify the
// mixed-order inequality bound by enumeration, evaluate and maximize quantum
// violations, and compute critical white-noise visibilities via the local
// polytope LP.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "bellkit/behavior.hpp"
#include "bellkit/expression.hpp"
#include "bellkit/json_io.hpp"
#include "bellkit/seesaw.hpp"
#include "bellkit/states.hpp"
#include "bellkit/tensor.hpp"
#include "bellkit/visibility.hpp"
#include "bellkit/wwzb.hpp"

namespace {

constexpr const char* kVersion = "bellkit 0.1.0";

using bellkit::Json;
using Clock = std::chrono::steady_clock;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "dicke-mix:N=5,e=2" | "dicke:N=6,e=3" | "white-noise:N=5" | path to a
// density-matrix JSON file
bellkit::DensityMatrix parse_state(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::map<std::string, int> kv;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw UsageError("bad state parameter '" + item + "' (expected key=value)");
            kv[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
        }
    }
    auto need = [&](const char* key) {
        if (!kv.count(key))
            throw UsageError("state spec '" + spec + "' misses parameter " + key);
        return kv[key];
    };
    if (kind == "dicke-mix") return bellkit::dicke_mixture(need("N"), need("e"));
    if (kind == "dicke")
        return bellkit::projector(bellkit::dicke_state(need("N"), need("e")));
    if (kind == "white-noise") return bellkit::white_noise(need("N"));
    // otherwise treat as a file path
    std::ifstream in(spec);
    if (!in)
        throw UsageError("unknown state spec '" + spec +
                         "' (not dicke-mix/dicke/white-noise and no such file)");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw UsageError("failed to parse state file " + spec + ": " + e.what());
    }
    return bellkit::density_matrix_from_json(j);
}

bellkit::BellExpression parse_expression(const std::string& spec) {
    if (spec == "ineq5") return bellkit::build_ineq5();
    if (spec == "chsh") return bellkit::build_chsh();
    std::ifstream in(spec);
    if (!in)
        throw UsageError("unknown expression '" + spec +
                         "' (not a builtin and no such file)");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw UsageError("failed to parse expression file " + spec + ": " + e.what());
    }
    return bellkit::expression_from_json(j);
}

struct Report {
    Json doc;
    Clock::time_point start = Clock::now();

    Report(const std::string& command, Json parameters, std::uint64_t seed) {
        doc["command"] = command;
        doc["parameters"] = std::move(parameters);
        doc["seed"] = seed;
        doc["version"] = kVersion;
    }
    void finish(Json results) {
        doc["results"] = std::move(results);
        doc["wall_time_seconds"] =
            std::chrono::duration<double>(Clock::now() - start).count();
    }
};

struct Table1Row {
    int n, e;
    // reference fractions; zero denominator marks an absent cell
    long c_num[3], c_den[3];
    double pcr2, pcr3;  // reference critical visibilities (<0 = absent)
};

const Table1Row kTable1[] = {
    {5, 1, {8, 33, 0}, {25, 25, 0}, 0.536, 0.477},
    {5, 2, {18, 24, 0}, {25, 25, 0}, 0.767, 0.746},
    {7, 1, {13, 25, 85}, {49, 49, 49}, 0.271, -1.0},
    {7, 2, {200, 32, 129}, {441, 147, 49}, 0.295, -1.0},
    {7, 3, {32, 864, 256}, {49, 1225, 245}, 0.508, -1.0},
};

int cmd_table1(bool json_out, std::uint64_t seed, int restarts, double tolerance,
               bool include_pcr, double pcr_tolerance, double cell_timeout) {
    Report report("table1",
                  Json{{"restarts", restarts},
                       {"tolerance", tolerance},
                       {"include_pcr", include_pcr}},
                  seed);
    Json rows = Json::array();
    bool all_ok = true;

    for (const auto& row : kTable1) {
        const auto rho = bellkit::dicke_mixture(row.n, row.e);
        const auto tensor = bellkit::full_tensor(rho);
        Json cells = Json::array();
        if (!json_out) std::printf("rho_%d^%d:\n", row.n, row.e);
        for (int ki = 0; ki < 3; ++ki) {
            if (row.c_den[ki] == 0) continue;
            const int k = 2 * (ki + 1);
            const double reference =
                static_cast<double>(row.c_num[ki]) / static_cast<double>(row.c_den[ki]);
            const auto t0 = Clock::now();
            bellkit::WwzbOptions opt;
            opt.restarts = restarts;
            opt.seed = seed + 1000 * row.n + 100 * row.e + k;
            const auto res = bellkit::maximize_ck(tensor, k, opt);
            const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
            const bool ok = std::abs(res.value - reference) <= tolerance;
            all_ok = all_ok && ok;
            cells.push_back({{"k", k},
                             {"value", res.value},
                             {"reference", reference},
                             {"reference_fraction", std::to_string(row.c_num[ki]) + "/" +
                                                        std::to_string(row.c_den[ki])},
                             {"admits_model", res.admits_model},
                             {"pass", ok},
                             {"seconds", dt}});
            if (!json_out)
                std::printf("  C_%d = %.9f  (reference %ld/%ld = %.9f)  %s  [%.2fs]\n", k,
                            res.value, row.c_num[ki], row.c_den[ki], reference,
                            ok ? "pass" : "FAIL", dt);
        }
        if (include_pcr) {
            for (int s = 2; s <= 3; ++s) {
                const double reference = s == 2 ? row.pcr2 : row.pcr3;
                if (reference < 0.0) continue;
                const auto t0 = Clock::now();
                bellkit::CriticalVisibilityOptions opt;
                opt.restarts = s == 2 ? 20 : 8;
                opt.seed = seed + 17 * row.n + 5 * row.e + s;
                const auto res = bellkit::critical_visibility(rho, s, opt);
                const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
                const bool ok = res.status == bellkit::LpStatus::Optimal &&
                                std::abs(res.p_crit - reference) <= pcr_tolerance;
                all_ok = all_ok && ok;
                cells.push_back({{"p_cr_settings", s},
                                 {"value", res.p_crit},
                                 {"reference", reference},
                                 {"pass", ok},
                                 {"seconds", dt},
                                 {"timed_out", cell_timeout > 0 && dt > cell_timeout}});
                if (!json_out)
                    std::printf("  p_cr(%dset) = %.4f  (reference %.3f)  %s  [%.1fs]%s\n",
                                s, res.p_crit, reference, ok ? "pass" : "FAIL", dt,
                                cell_timeout > 0 && dt > cell_timeout
                                    ? "  (over time budget)"
                                    : "");
            }
        }
        rows.push_back({{"state", "dicke-mix:N=" + std::to_string(row.n) +
                                      ",e=" + std::to_string(row.e)},
                        {"cells", std::move(cells)}});
    }
    report.finish({{"rows", std::move(rows)}, {"all_pass", all_ok}});
    if (json_out)
        std::cout << report.doc.dump(2) << "\n";
    else
        std::printf("%s\n", all_ok ? "all cells pass" : "some cells FAILED");
    return all_ok ? 0 : 1;
}

int cmd_verify_inequality(const std::string& expr_spec, bool json_out,
                          std::uint64_t seed) {
    Report report("verify-inequality", Json{{"expression", expr_spec}}, seed);
    const auto expr = parse_expression(expr_spec);
    const auto bound = bellkit::lhv_bound(expr);
    std::map<int, int> order_counts;
    for (const auto& t : expr.terms) ++order_counts[t.order()];
    Json orders = Json::object();
    for (const auto& [k, c] : order_counts) orders[std::to_string(k)] = c;
    report.finish({{"terms", expr.terms.size()},
                   {"terms_by_order", orders},
                   {"lhv_max", bound.max_value},
                   {"lhv_min", bound.min_value},
                   {"value_set", bound.value_set}});
    if (json_out) {
        std::cout << report.doc.dump(2) << "\n";
    } else {
        std::printf("expression: %s\n", expr_spec.c_str());
        std::printf("terms: %zu (", expr.terms.size());
        bool first = true;
        for (const auto& [k, c] : order_counts) {
            std::printf("%s%d of order %d", first ? "" : ", ", c, k);
            first = false;
        }
        std::printf(")\nLHV bound: max %g, min %g\nattained values:", bound.max_value,
                    bound.min_value);
        for (double v : bound.value_set) std::printf(" %g", v);
        std::printf("\n");
    }
    return 0;
}

int cmd_violation(const std::string& state_spec, const std::string& expr_spec,
                  const std::string& mode, bool json_out, std::uint64_t seed,
                  int restarts, const std::string& warm_start_path) {
    Report report("violation",
                  Json{{"state", state_spec},
                       {"expression", expr_spec},
                       {"mode", mode},
                       {"restarts", restarts}},
                  seed);
    const auto rho = parse_state(state_spec);
    const auto expr = parse_expression(expr_spec);
    const auto tensor = bellkit::full_tensor(rho);
    const double bound = bellkit::lhv_bound(expr).max_value;

    double value = 0.0;
    Json settings_json;
    Json extra = Json::object();
    if (mode == "paper-settings") {
        if (expr.num_parties != 5)
            throw UsageError("paper-settings mode is defined for five parties");
        const auto st = bellkit::paper_settings();
        value = bellkit::evaluate_quantum(expr, tensor, st);
        settings_json = bellkit::settings_to_json(st);
    } else if (mode == "optimize") {
        bellkit::SeesawOptions opt;
        opt.restarts = restarts;
        opt.seed = seed;
        bellkit::SettingsAssignment warm;
        if (!warm_start_path.empty()) {
            std::ifstream in(warm_start_path);
            if (!in) throw UsageError("cannot open settings file " + warm_start_path);
            Json j;
            in >> j;
            warm = bellkit::settings_from_json(j);
            opt.initial = &warm;
        }
        const auto res = bellkit::seesaw_maximize(expr, tensor, opt);
        value = res.value;
        settings_json = bellkit::settings_to_json(res.settings);
        extra = {{"sweeps", res.sweeps},
                 {"restarts_used", res.restarts_used},
                 {"converged", res.converged}};
    } else {
        throw UsageError("mode must be paper-settings or optimize");
    }

    const double ratio = value > 1e-12 ? bound / value : 1.0;
    report.finish({{"value", value},
                   {"lhv_bound", bound},
                   {"violates", value > bound + 1e-9},
                   {"predicted_critical_visibility", ratio},
                   {"settings", settings_json},
                   {"details", extra}});
    if (json_out) {
        std::cout << report.doc.dump(2) << "\n";
    } else {
        std::printf("quantum value: %.6f\nLHV bound: %g\n", value, bound);
        std::printf("violation: %s\n", value > bound + 1e-9 ? "yes" : "no");
        std::printf("bound/value (predicted critical visibility): %.6f\n", ratio);
    }
    return 0;
}

int cmd_visibility(const std::string& state_spec, int num_settings, bool json_out,
                   std::uint64_t seed, int restarts, const std::string& settings_path,
                   bool symmetric) {
    Report report("visibility",
                  Json{{"state", state_spec},
                       {"settings_count", num_settings},
                       {"restarts", restarts},
                       {"shared_settings", symmetric}},
                  seed);
    const auto rho = parse_state(state_spec);
    bellkit::VisibilityResult res;
    if (!settings_path.empty()) {
        std::ifstream in(settings_path);
        if (!in) throw UsageError("cannot open settings file " + settings_path);
        Json j;
        in >> j;
        const auto st = bellkit::settings_from_json(j);
        res = bellkit::visibility_for_settings(rho, st);
    } else {
        bellkit::CriticalVisibilityOptions opt;
        opt.restarts = restarts;
        opt.seed = seed;
        opt.shared_settings = symmetric;
        res = bellkit::critical_visibility(rho, num_settings, opt);
    }
    if (res.status != bellkit::LpStatus::Optimal) {
        std::fprintf(stderr, "LP did not reach an optimum (status %d)\n",
                     static_cast<int>(res.status));
        return 1;
    }
    report.finish(bellkit::visibility_result_to_json(res));
    if (json_out) {
        std::cout << report.doc.dump(2) << "\n";
    } else {
        std::printf("critical visibility p_cr = %.6f\n", res.p_crit);
        std::printf("(reduced LP: %s, %zu nonzero vertex weights)\n",
                    res.reduced ? "yes" : "no", res.weights.size());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bell-inequality toolkit for Dicke-state mixtures"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    bool json_out = false;
    std::uint64_t seed = 0;
    app.add_flag("--json", json_out, "emit a JSON report on stdout");
    app.add_option("--seed", seed, "random seed for all stochastic searches");

    auto* t1 = app.add_subcommand("table1", "reproduce the plane-criterion table");
    int t1_restarts = 200;
    double t1_tol = 1e-6, t1_pcr_tol = 3e-3, t1_timeout = 0.0;
    bool include_pcr = false;
    t1->add_option("--restarts", t1_restarts, "optimizer restarts per cell");
    t1->add_option("--tolerance", t1_tol, "pass tolerance for the C_k cells");
    t1->add_flag("--include-pcr", include_pcr,
                 "also compute the critical-visibility columns (slow)");
    t1->add_option("--pcr-tolerance", t1_pcr_tol, "pass tolerance for p_cr cells");
    t1->add_option("--cell-timeout", t1_timeout,
                   "report p_cr cells exceeding this many seconds");

    auto* vi = app.add_subcommand("verify-inequality",
                                  "term structure and exact LHV bound by enumeration");
    std::string vi_expr = "ineq5";
    vi->add_option("--expr", vi_expr, "builtin name (ineq5, chsh) or JSON file");

    auto* vl = app.add_subcommand("violation", "quantum value of a Bell expression");
    std::string vl_state = "dicke-mix:N=5,e=2", vl_expr = "ineq5",
                vl_mode = "paper-settings", vl_warm;
    int vl_restarts = 100;
    vl->add_option("--state", vl_state, "state spec or density-matrix JSON file");
    vl->add_option("--expr", vl_expr, "builtin name or expression JSON file");
    vl->add_option("--mode", vl_mode, "paper-settings | optimize");
    vl->add_option("--restarts", vl_restarts, "seesaw restarts (optimize mode)");
    vl->add_option("--settings", vl_warm, "warm-start settings JSON (optimize mode)");

    auto* vs = app.add_subcommand("visibility", "critical white-noise visibility");
    std::string vs_state = "dicke-mix:N=5,e=2", vs_settings;
    int vs_count = 2, vs_restarts = 50;
    bool vs_symmetric = true;
    vs->add_option("--state", vs_state, "state spec or density-matrix JSON file");
    vs->add_option("--settings-count", vs_count, "settings per party (2 or 3)");
    vs->add_option("--restarts", vs_restarts, "outer search restarts");
    vs->add_option("--settings", vs_settings,
                   "settings JSON: evaluate these settings, skip the outer search");
    vs->add_flag("--symmetric,!--no-symmetric", vs_symmetric,
                 "share settings across parties in the outer search");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (t1->parsed())
            return cmd_table1(json_out, seed, t1_restarts, t1_tol, include_pcr,
                              t1_pcr_tol, t1_timeout);
        if (vi->parsed()) return cmd_verify_inequality(vi_expr, json_out, seed);
        if (vl->parsed())
            return cmd_violation(vl_state, vl_expr, vl_mode, json_out, seed, vl_restarts,
                                 vl_warm);
        if (vs->parsed())
            return cmd_visibility(vs_state, vs_count, json_out, seed, vs_restarts,
                                  vs_settings, vs_symmetric);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
