#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsplit/catalog.hpp"
#include "nsplit/problems.hpp"
#include "nsplit/reference.hpp"
#include "nsplit/stepper.hpp"

namespace nsplit {

struct LadderConfig {
    double dt0 = 0.1 / 8.0;
    double ratio = 2.0;
    int rungs = 6;
};

struct ReferenceConfig {
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
};

struct StudyConfig {
    std::string problem = "adr2d";  // adr2d | complex-ode | complex-ode-real
    std::vector<std::string> methods = {"strang", "clt2", "clt3", "cstrang3"};
    LadderConfig ladder;
    std::string sub_tableau = "rk4";  // rk4 | kutta3 | exact
    int substeps = 1;
    ReferenceConfig reference;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    AdrConfig adr;
    ComplexOdeConfig complex_ode;
};

struct StudyRow {
    std::string method;
    double dt = 0.0;
    double error = 0.0;  // +inf marks a blown-up run
    std::int64_t rhs_evals_total = 0;
    std::vector<std::int64_t> per_op_evals;
    double wall_seconds = 0.0;
};

struct StudyResult {
    std::string problem;
    int n_operators = 0;
    std::vector<StudyRow> rows;
    std::map<std::string, double> slopes;  // per method, fitted on usable rows
};

inline std::vector<double> dt_ladder(const LadderConfig& cfg) {
    if (!(cfg.dt0 > 0.0) || !(cfg.ratio > 1.0) || cfg.rungs < 1)
        throw std::invalid_argument("dt_ladder: need dt0 > 0, ratio > 1, rungs >= 1");
    std::vector<double> ladder(static_cast<std::size_t>(cfg.rungs));
    double dt = cfg.dt0;
    for (int k = 0; k < cfg.rungs; ++k, dt /= cfg.ratio) ladder[static_cast<std::size_t>(k)] = dt;
    return ladder;
}

inline SubIntegratorConfig sub_config_from(const StudyConfig& cfg) {
    SubIntegratorConfig sub;
    sub.substeps_per_flow = cfg.substeps;
    if (cfg.sub_tableau == "rk4")
        sub.tableau = rk4_tableau();
    else if (cfg.sub_tableau == "kutta3")
        sub.tableau = kutta3_tableau();
    else if (cfg.sub_tableau == "exact")
        sub.exact_linear = true;
    else
        throw std::invalid_argument("StudyConfig: unknown sub-integrator '" + cfg.sub_tableau + "'");
    return sub;
}

/// Slope fits over rows that are finite and above the round-off floor.
/// Rows are sorted canonically (dt descending) first, so the fit does not
/// depend on row order.
inline void recompute_slopes(StudyResult& result) {
    result.slopes.clear();
    std::map<std::string, std::vector<std::pair<double, double>>> by_method;
    for (const StudyRow& row : result.rows) {
        if (!std::isfinite(row.error) || row.error <= 1e-12) continue;
        by_method[row.method].emplace_back(row.dt, row.error);
    }
    for (auto& [method, data] : by_method) {
        if (data.size() < 2) continue;
        std::sort(data.begin(), data.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        std::vector<double> dts, errs;
        for (const auto& [dt, err] : data) {
            dts.push_back(dt);
            errs.push_back(err);
        }
        result.slopes[method] = fit_loglog_slope(dts, errs);
    }
}

namespace detail {

inline int steps_for(double span, double dt) {
    const double raw = span / dt;
    const int n = static_cast<int>(std::llround(raw));
    if (n < 1 || std::abs(raw - n) > 1e-9 * raw)
        throw std::invalid_argument("study: dt ladder does not divide the time span");
    return n;
}

}  // namespace detail

/// Runs the configured convergence / work-precision study: every method over
/// every ladder rung against a single reference solution. Blow-ups are kept
/// as rows with an infinite error and excluded from the slope fits.
inline StudyResult run_study(const StudyConfig& cfg) {
    const std::vector<double> ladder = dt_ladder(cfg.ladder);
    const SubIntegratorConfig sub = sub_config_from(cfg);

    StudyResult result;
    result.problem = cfg.problem;

    const bool is_adr = cfg.problem == "adr2d";
    const bool is_complex = cfg.problem == "complex-ode";
    const bool is_real_form = cfg.problem == "complex-ode-real";
    if (!is_adr && !is_complex && !is_real_form)
        throw std::invalid_argument("study: unknown problem '" + cfg.problem + "'");

    SplitOde ode = is_adr ? adr_split(cfg.adr) : is_complex ? complex_split(cfg.complex_ode) : realified_split(cfg.complex_ode);
    result.n_operators = ode.n_operators;

    double t0 = 0.0, tf = 0.0;
    CVector y0;
    CVector adr_reference;
    std::vector<Cplx> sample_reference;
    std::vector<double> sample_times;
    if (is_adr) {
        t0 = cfg.adr.t0;
        tf = cfg.adr.tf;
        y0 = adr_initial(cfg.adr);
        const SplitOde whole = adr_split(cfg.adr);
        adr_reference = reference_solve([&whole](Cplx t, const CVector& y, CVector& dydt) { whole.eval_sum(t, y, dydt); },
                                        t0, y0, tf, cfg.reference.abs_tol, cfg.reference.rel_tol);
    } else {
        t0 = cfg.complex_ode.t0;
        tf = cfg.complex_ode.tf;
        y0 = is_complex ? CVector{cfg.complex_ode.u0} : realified_initial(cfg.complex_ode);
        sample_times = cfg.complex_ode.sample_times();
        // Both forms are scored against the scalar complex reference.
        const SplitOde scalar = complex_split(cfg.complex_ode);
        const auto states = reference_samples(
            [&scalar](Cplx t, const CVector& y, CVector& dydt) { scalar.eval_sum(t, y, dydt); }, t0,
            CVector{cfg.complex_ode.u0}, sample_times, cfg.reference.abs_tol, cfg.reference.rel_tol);
        for (const CVector& s : states) sample_reference.push_back(s[0]);
    }

    for (const std::string& id : cfg.methods) {
        const MethodTable table = make_method(id, ode.n_operators);
        for (double dt : ladder) {
            const int n_steps = detail::steps_for(tf - t0, dt);
            StudyRow row;
            row.method = id;
            row.dt = dt;
            try {
                if (is_adr) {
                    const IntegrationResult res = integrate(table, ode, t0, y0, tf, n_steps, sub);
                    row.error = l2_error(res.y, adr_reference);
                    row.per_op_evals = res.eval_counts;
                    row.wall_seconds = res.wall_seconds;
                } else {
                    if (n_steps % cfg.complex_ode.samples != 0)
                        throw std::invalid_argument("study: step count must be a multiple of the sample count");
                    const int every = n_steps / cfg.complex_ode.samples;
                    std::vector<Cplx> samples;
                    samples.reserve(sample_times.size());
                    const auto observer = [&](int step, double, const CVector& y) {
                        if (step % every == 0) samples.push_back(is_complex ? y[0] : identify_complex(y));
                    };
                    const IntegrationResult res = integrate(table, ode, t0, y0, tf, n_steps, sub, observer);
                    row.error = mrms_error(samples, sample_reference);
                    row.per_op_evals = res.eval_counts;
                    row.wall_seconds = res.wall_seconds;
                }
            } catch (const blow_up_error&) {
                row.error = std::numeric_limits<double>::infinity();
                row.per_op_evals = ode.eval_counts;
                row.wall_seconds = 0.0;
            }
            if (row.per_op_evals.empty()) row.per_op_evals.assign(static_cast<std::size_t>(ode.n_operators), 0);
            row.rhs_evals_total = 0;
            for (std::int64_t c : row.per_op_evals) row.rhs_evals_total += c;
            result.rows.push_back(std::move(row));
        }
    }
    recompute_slopes(result);
    return result;
}

/// Reads a StudyConfig from its JSON document form; missing keys keep their
/// defaults, so a config file only states what it overrides.
inline StudyConfig study_config_from_json(const nlohmann::json& j) {
    StudyConfig cfg;
    if (j.contains("problem")) cfg.problem = j.at("problem").get<std::string>();
    if (j.contains("methods")) cfg.methods = j.at("methods").get<std::vector<std::string>>();
    if (j.contains("ladder")) {
        const auto& l = j.at("ladder");
        if (l.contains("dt0")) cfg.ladder.dt0 = l.at("dt0").get<double>();
        if (l.contains("ratio")) cfg.ladder.ratio = l.at("ratio").get<double>();
        if (l.contains("rungs")) cfg.ladder.rungs = l.at("rungs").get<int>();
    }
    if (j.contains("sub")) {
        const auto& s = j.at("sub");
        if (s.contains("tableau")) cfg.sub_tableau = s.at("tableau").get<std::string>();
        if (s.contains("substeps")) cfg.substeps = s.at("substeps").get<int>();
    }
    if (j.contains("reference")) {
        const auto& r = j.at("reference");
        if (r.contains("abs_tol")) cfg.reference.abs_tol = r.at("abs_tol").get<double>();
        if (r.contains("rel_tol")) cfg.reference.rel_tol = r.at("rel_tol").get<double>();
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("adr2d")) {
        const auto& a = j.at("adr2d");
        if (a.contains("m")) cfg.adr.m = a.at("m").get<int>();
        if (a.contains("tf")) cfg.adr.tf = a.at("tf").get<double>();
    }
    if (j.contains("complex_ode")) {
        const auto& c = j.at("complex_ode");
        if (c.contains("tf")) cfg.complex_ode.tf = c.at("tf").get<double>();
        if (c.contains("samples")) cfg.complex_ode.samples = c.at("samples").get<int>();
    }
    return cfg;
}

}  // namespace nsplit
