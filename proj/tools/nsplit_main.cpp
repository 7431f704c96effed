// nsplit: construct, validate, compose, and benchmark N-split
// operator-splitting methods.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsplit/nsplit.hpp"

namespace {

using namespace nsplit;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

int cmd_list_methods(int n_operators, bool as_json) {
    if (as_json) {
        nlohmann::json out = nlohmann::json::array();
        for (const CatalogEntry& e : method_catalog()) {
            if (e.parametric) {
                out.push_back({{"id", e.id}, {"summary", e.summary}, {"parametric", true}});
                continue;
            }
            const MethodTable t = make_method(e.id, n_operators);
            nlohmann::json j = to_json(t);
            j["summary"] = e.summary;
            j["stages_count"] = t.stage_count();
            j["positive_real_parts"] = has_positive_real_parts(t);
            out.push_back(std::move(j));
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::printf("%-12s %8s %7s %15s  %s\n", "id", "stages", "order", "positive-real", "summary");
    for (const CatalogEntry& e : method_catalog()) {
        if (e.parametric) {
            std::printf("%-12s %8s %7d %15s  %s\n", e.id.c_str(), "2", 2, "depends on b", e.summary.c_str());
            continue;
        }
        const MethodTable t = make_method(e.id, n_operators);
        std::printf("%-12s %8d %7d %15s  %s\n", e.id.c_str(), t.stage_count(), t.design_order,
                    has_positive_real_parts(t) ? "yes" : "no", e.summary.c_str());
    }
    std::printf("(stage counts shown for N = %d operators)\n", n_operators);
    return 0;
}

int cmd_verify_order(const std::string& id, int n_operators, int order, double tol, bool empirical,
                     std::uint64_t seed) {
    const MethodTable t = make_method(id, n_operators);
    const int target = order > 0 ? order : t.design_order;
    const OrderReport rep = order_residuals(t, tol);

    std::printf("method %s  N=%d  stages=%d  design order %d  checking order %d\n", t.name.c_str(), t.n_operators,
                t.stage_count(), t.design_order, target);
    std::printf("%-12s %22s %22s\n", "condition", "residual", "recursion value");
    for (const auto& c : rep.order1)
        std::printf("%-12s %22.15e %22.15e\n", c.id.c_str(), c.residual, std::abs(c.recursion_value));
    for (const auto& c : rep.order2)
        std::printf("%-12s %22.15e %22.15e\n", c.id.c_str(), c.residual, std::abs(c.recursion_value));

    bool pass = rep.satisfied_through >= std::min(target, 2);
    if (target > 2 || empirical) {
        const MatrixSet ms = random_matrix_set(t.n_operators, 3, seed, 0.5);
        const std::vector<double> ladder = {0.4, 0.3, 0.2, 0.15, 0.1, 0.075};
        const double slope = empirical_order(t, ms, ladder);
        std::printf("empirical order on a seeded matrix problem (seed %llu): %.3f\n",
                    static_cast<unsigned long long>(seed), slope);
        pass = pass && slope >= target - 0.25;
    }
    std::printf("%s: order %d %s\n", t.name.c_str(), target, pass ? "verified" : "NOT satisfied");
    return pass ? 0 : 1;
}

int cmd_bch_check(int n_operators, int dimension, std::uint64_t seed, double t0, int rungs) {
    const MatrixSet ms = random_matrix_set(n_operators, dimension, seed);
    std::vector<double> errors;
    double t = t0;
    for (int k = 0; k < rungs; ++k, t /= 2.0) errors.push_back(truncation_error(ms, t));

    bool all_roundoff = true;
    for (double e : errors) all_roundoff &= e < 1e-13;
    if (all_roundoff) {
        std::printf("truncation errors are at round-off for all t: operators commute, expansion exact\n");
        return 0;
    }

    std::printf("N=%d d=%d seed=%llu\n", n_operators, dimension, static_cast<unsigned long long>(seed));
    std::printf("%12s %22s %12s\n", "t", "truncation error", "ratio");
    bool pass = true;
    t = t0;
    for (int k = 0; k < rungs; ++k, t /= 2.0) {
        if (k == 0)
            std::printf("%12.6g %22.15e %12s\n", t, errors[0], "-");
        else {
            const double ratio = errors[k - 1] / errors[k];
            const bool ok = ratio >= 12.0 && ratio <= 20.0;
            pass = pass && ok;
            std::printf("%12.6g %22.15e %12.3f %s\n", t, errors[k], ratio, ok ? "" : "(outside [12,20])");
        }
    }
    std::printf("halving ratios %s the fourth-order remainder window [12,20]\n", pass ? "within" : "OUTSIDE");
    return pass ? 0 : 1;
}

int cmd_study(const StudyConfig& cfg, bool work_precision) {
    const StudyResult result = run_study(cfg);
    const std::string stem = work_precision ? "work_precision" : "convergence";
    const std::string csv_path = cfg.out_dir + "/" + stem + "_" + cfg.problem + ".csv";
    write_file(csv_path, emit_csv(result));

    std::printf("problem %s, sub-integrator %s x%d, reference rtol %.1e\n", cfg.problem.c_str(),
                cfg.sub_tableau.c_str(), cfg.substeps, cfg.reference.rel_tol);
    std::printf("%-14s %12s %14s %14s %12s\n", "method", "dt", "error", "rhs evals", "wall [s]");
    for (const StudyRow& row : result.rows)
        std::printf("%-14s %12.6g %14.6e %14lld %12.4f\n", row.method.c_str(), row.dt, row.error,
                    static_cast<long long>(row.rhs_evals_total), row.wall_seconds);
    std::printf("fitted %s slopes:\n", work_precision ? "error-vs-dt" : "convergence");
    for (const auto& [method, slope] : result.slopes) std::printf("  %-14s %.3f\n", method.c_str(), slope);
    std::printf("wrote %s\n", csv_path.c_str());
    return 0;
}

int cmd_render(const std::string& input, const std::string& kind, std::string output) {
    const StudyResult result = parse_csv(read_file(input));
    const ChartKind ck = kind == "work-precision" ? ChartKind::work_precision : ChartKind::convergence;
    if (output.empty()) output = input.substr(0, input.find_last_of('.')) + ".svg";
    write_file(output, emit_svg(result, ck));
    std::printf("wrote %s\n", output.c_str());
    return 0;
}

/// Locate a --config argument ahead of the full parse so the file's values
/// become the defaults that explicit flags then override.
std::string pre_scan_config(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"N-split operator-splitting method toolkit"};
    app.require_subcommand(1);

    // ---- list-methods ----
    auto* list = app.add_subcommand("list-methods", "print the method catalog");
    int list_n = 4;
    bool list_json = false;
    list->add_option("--N,--n-operators", list_n, "operator count used for stage counts");
    list->add_flag("--json", list_json, "emit the catalog with full coefficient tables as JSON");

    // ---- verify-order ----
    auto* verify = app.add_subcommand("verify-order", "check order conditions of a method");
    std::string verify_id;
    int verify_n = 4, verify_order = 0;
    double verify_tol = 1e-12;
    bool verify_empirical = false;
    std::uint64_t verify_seed = 123;
    verify->add_option("--method", verify_id, "method id")->required();
    verify->add_option("--N,--n-operators", verify_n, "operator count");
    verify->add_option("--order", verify_order, "order to verify (default: the method's design order)");
    verify->add_option("--tol", verify_tol, "residual tolerance");
    verify->add_flag("--empirical", verify_empirical, "also measure the empirical order on a matrix problem");
    verify->add_option("--seed", verify_seed, "seed for the matrix problem");

    // ---- convergence / work-precision ----
    StudyConfig cfg;
    std::string config_path = pre_scan_config(argc, argv);
    std::string methods_csv;
    if (!config_path.empty()) {
        try {
            cfg = study_config_from_json(nlohmann::json::parse(read_file(config_path)));
        } catch (const std::exception& err) {
            std::fprintf(stderr, "error: %s\n", err.what());
            return 2;
        }
    }
    const auto add_study_options = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file; flags override its fields");
        cmd->add_option("--problem", cfg.problem, "adr2d | complex-ode | complex-ode-real");
        cmd->add_option("--methods", methods_csv, "comma-separated method ids");
        cmd->add_option("--dt0,--ladder.dt0", cfg.ladder.dt0, "coarsest step size");
        cmd->add_option("--ratio,--ladder.ratio", cfg.ladder.ratio, "ladder ratio");
        cmd->add_option("--rungs,--ladder.rungs", cfg.ladder.rungs, "ladder length");
        cmd->add_option("--sub,--sub.tableau", cfg.sub_tableau, "rk4 | kutta3 | exact");
        cmd->add_option("--substeps,--sub.substeps", cfg.substeps, "RK substeps per sub-flow");
        cmd->add_option("--reference.abs_tol", cfg.reference.abs_tol, "reference absolute tolerance");
        cmd->add_option("--reference.rel_tol", cfg.reference.rel_tol, "reference relative tolerance");
        cmd->add_option("--seed", cfg.seed, "rng seed recorded with the study");
        cmd->add_option("--out", cfg.out_dir, "output directory");
        cmd->add_option("--adr2d.m", cfg.adr.m, "ADR grid cells per side");
        cmd->add_option("--adr2d.tf", cfg.adr.tf, "ADR final time");
        cmd->add_option("--complex_ode.tf", cfg.complex_ode.tf, "complex ODE final time");
        cmd->add_option("--complex_ode.samples", cfg.complex_ode.samples, "complex ODE sample count");
    };
    auto* conv = app.add_subcommand("convergence", "error vs dt study with CSV output");
    add_study_options(conv);
    auto* wp = app.add_subcommand("work-precision", "error vs cost study with CSV output");
    add_study_options(wp);

    // ---- bch-check ----
    auto* bch = app.add_subcommand("bch-check", "verify the truncated exponential-product expansion");
    int bch_n = 3, bch_d = 3, bch_rungs = 4;
    std::uint64_t bch_seed = 11;
    double bch_t0 = 0.1;
    bch->add_option("--N,--n-operators", bch_n, "operator count");
    bch->add_option("--dim", bch_d, "matrix dimension");
    bch->add_option("--seed", bch_seed, "rng seed");
    bch->add_option("--t0", bch_t0, "coarsest t");
    bch->add_option("--rungs", bch_rungs, "dyadic refinements");

    // ---- render ----
    auto* render = app.add_subcommand("render", "render a study CSV as an SVG chart");
    std::string render_input, render_kind = "convergence", render_out;
    render->add_option("--input", render_input, "study CSV file")->required();
    render->add_option("--kind", render_kind, "convergence | work-precision");
    render->add_option("--out", render_out, "output SVG path (default: next to the CSV)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) return cmd_list_methods(list_n, list_json);
        if (verify->parsed())
            return cmd_verify_order(verify_id, verify_n, verify_order, verify_tol, verify_empirical, verify_seed);
        if (bch->parsed()) return cmd_bch_check(bch_n, bch_d, bch_seed, bch_t0, bch_rungs);
        if (render->parsed()) return cmd_render(render_input, render_kind, render_out);
        if (conv->parsed() || wp->parsed()) {
            if (!methods_csv.empty()) {
                cfg.methods.clear();
                std::istringstream ss(methods_csv);
                std::string id;
                while (std::getline(ss, id, ',')) cfg.methods.push_back(id);
            }
            return cmd_study(cfg, wp->parsed());
        }
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 2;
    }
    return 0;
}
