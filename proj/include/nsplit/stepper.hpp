#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsplit/bch.hpp"
#include "nsplit/butcher.hpp"
#include "nsplit/method_table.hpp"
#include "nsplit/split_ode.hpp"

namespace nsplit {

class blow_up_error : public std::runtime_error {
  public:
    blow_up_error(const std::string& what, double t) : std::runtime_error(what), t_at(t) {}
    double t_at;
};

struct SubIntegratorConfig {
    ButcherTableau tableau = rk4_tableau();
    int substeps_per_flow = 1;
    bool exact_linear = false;          // advance linear sub-flows with exp(tau A)
    bool project_real_each_step = false;  // drop imaginary parts after each full step
};

/// One explicit RK step of size h (possibly complex) for dy/dt = f(t, y),
/// with stage abscissae t + c_j h. Costs stages() evaluations of f.
inline CVector rk_substep(const ButcherTableau& tab, const Evaluator& f, Cplx t, const CVector& y, Cplx h) {
    const int s = tab.stages();
    const std::size_t d = y.size();
    std::vector<CVector> k(static_cast<std::size_t>(s), CVector(d));
    CVector work(d);
    for (int j = 0; j < s; ++j) {
        work = y;
        for (int m = 0; m < j; ++m) {
            const double a = tab.a[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
            if (a == 0.0) continue;
            const Cplx ha = h * a;
            const CVector& km = k[static_cast<std::size_t>(m)];
            for (std::size_t i = 0; i < d; ++i) work[i] += ha * km[i];
        }
        f(t + tab.c[static_cast<std::size_t>(j)] * h, work, k[static_cast<std::size_t>(j)]);
    }
    CVector out = y;
    for (int j = 0; j < s; ++j) {
        const Cplx hb = h * tab.b[static_cast<std::size_t>(j)];
        const CVector& kj = k[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < d; ++i) out[i] += hb * kj[i];
    }
    return out;
}

/// exp(t A) y by scaling-and-squaring.
inline CVector exact_linear_flow(const ComplexMatrix& a, Cplx t, const CVector& y) {
    if (t == Cplx{0.0, 0.0}) return y;
    return expm(t * a).apply(y);
}

namespace detail {

/// Advance one step of size dt along a flattened method. Each operator
/// carries its own clock, starting at the step's t and advanced by the
/// operator's accumulated complex sub-step fractions.
inline CVector step_sequence(const FlowSequence& seq, SplitOde& ode, double t, CVector y, double dt,
                             const SubIntegratorConfig& cfg) {
    std::vector<Cplx> clock(static_cast<std::size_t>(ode.n_operators), Cplx{t, 0.0});
    for (const FlowItem& it : seq.items) {
        const std::size_t l = static_cast<std::size_t>(it.op - 1);
        const Cplx span = it.coeff * dt;
        if (cfg.exact_linear) {
            const auto& lin = ode.operators[l].linear;
            if (!lin) throw std::invalid_argument("split_step: exact sub-flows need linear operators");
            y = exact_linear_flow(*lin, span, y);
        } else {
            const Cplx h = span / static_cast<double>(cfg.substeps_per_flow);
            const Evaluator counted = [&ode, op = it.op](Cplx tt, const CVector& yy, CVector& out) {
                ode.eval(op, tt, yy, out);
            };
            for (int sub = 0; sub < cfg.substeps_per_flow; ++sub)
                y = rk_substep(cfg.tableau, counted, clock[l] + static_cast<double>(sub) * h, y, h);
        }
        clock[l] += span;
        if (!all_finite(y))
            throw blow_up_error("split_step: non-finite state while advancing operator " + std::to_string(it.op), t);
    }
    return y;
}

}  // namespace detail

/// One step of the splitting method over [t, t + dt]. Execution follows the
/// canonical flow sequence, so zero coefficients cost nothing and merged
/// sub-flows run once.
inline CVector split_step(const MethodTable& table, SplitOde& ode, double t, const CVector& y, double dt,
                          const SubIntegratorConfig& cfg) {
    if (table.n_operators != ode.n_operators) throw std::invalid_argument("split_step: operator arity mismatch");
    if (!(dt > 0.0)) throw std::invalid_argument("split_step: dt must be positive");
    if (cfg.substeps_per_flow < 1) throw std::invalid_argument("split_step: substeps_per_flow must be >= 1");
    return detail::step_sequence(to_sequence(table), ode, t, y, dt, cfg);
}

struct IntegrationResult {
    CVector y;
    std::vector<std::int64_t> eval_counts;
    double wall_seconds = 0.0;
    int steps = 0;
};

using StepObserver = std::function<void(int step, double t, const CVector& y)>;

/// Fixed-step driver: n_steps equal split steps from t0 to tf. Counters are
/// reset at entry and reported in the result. The state norm is guarded
/// against blow-up at 1e8 times the initial norm.
inline IntegrationResult integrate(const MethodTable& table, SplitOde& ode, double t0, const CVector& y0, double tf,
                                   int n_steps, const SubIntegratorConfig& cfg, const StepObserver& observer = {}) {
    if (n_steps < 1) throw std::invalid_argument("integrate: n_steps must be >= 1");
    if (static_cast<int>(y0.size()) != ode.dimension) throw std::invalid_argument("integrate: state dimension mismatch");
    const double dt = (tf - t0) / n_steps;
    const double guard = 1e8 * std::max(1.0, norm2(y0));
    const FlowSequence seq = to_sequence(table);
    if (table.n_operators != ode.n_operators) throw std::invalid_argument("integrate: operator arity mismatch");

    ode.reset_counters();
    const auto start = std::chrono::steady_clock::now();
    CVector y = y0;
    for (int step = 0; step < n_steps; ++step) {
        const double t = t0 + step * dt;
        y = detail::step_sequence(seq, ode, t, std::move(y), dt, cfg);
        if (cfg.project_real_each_step)
            for (Cplx& z : y) z = Cplx{z.real(), 0.0};
        if (norm2(y) > guard)
            throw blow_up_error("integrate: state norm exceeded 1e8 x initial norm", t + dt);
        if (observer) observer(step + 1, t0 + (step + 1) * dt, y);
    }
    const auto stop = std::chrono::steady_clock::now();

    IntegrationResult res;
    res.y = std::move(y);
    res.eval_counts = ode.eval_counts;
    res.wall_seconds = std::chrono::duration<double>(stop - start).count();
    res.steps = n_steps;
    return res;
}

/// Split ODE whose operators are the matrices of a MatrixSet, with the exact
/// linear attachments populated.
inline SplitOde linear_split_ode(const MatrixSet& ms) {
    validate_matrix_set(ms);
    SplitOde ode;
    ode.n_operators = ms.n_operators;
    ode.dimension = ms.dimension;
    for (const auto& x : ms.matrices) {
        SplitOperator op;
        op.linear = x;
        op.fn = [m = x](Cplx, const CVector& y, CVector& dydt) { dydt = m.apply(y); };
        ode.operators.push_back(std::move(op));
    }
    ComplexMatrix total(ms.dimension);
    for (const auto& x : ms.matrices) total += x;
    ode.sum = [m = std::move(total)](Cplx, const CVector& y, CVector& dydt) { dydt = m.apply(y); };
    ode.reset_counters();
    return ode;
}

}  // namespace nsplit
