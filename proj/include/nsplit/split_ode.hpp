#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "nsplit/linalg.hpp"

namespace nsplit {

/// Right-hand-side evaluator: writes F(t, y) into dydt (resized by callers).
using Evaluator = std::function<void(Cplx t, const CVector& y, CVector& dydt)>;

/// One split operator. When the operator is linear, its matrix can be
/// attached so the sub-flow can be advanced exactly with exp(tau A).
struct SplitOperator {
    Evaluator fn;
    std::optional<ComplexMatrix> linear;
};

/// An additively split ODE dy/dt = sum_l F^[l](t, y) over a complex state
/// vector. Evaluations through eval() are counted per operator; counters are
/// owned by the integration run using this instance, so concurrent runs take
/// their own copies.
struct SplitOde {
    int n_operators = 0;
    int dimension = 0;
    std::vector<SplitOperator> operators;
    Evaluator sum;
    std::vector<std::int64_t> eval_counts;

    void reset_counters() { eval_counts.assign(static_cast<std::size_t>(n_operators), 0); }

    void eval(int op, Cplx t, const CVector& y, CVector& dydt) {
        if (op < 1 || op > n_operators) throw std::invalid_argument("SplitOde::eval: operator index out of range");
        if (eval_counts.size() != static_cast<std::size_t>(n_operators)) reset_counters();
        ++eval_counts[static_cast<std::size_t>(op - 1)];
        operators[static_cast<std::size_t>(op - 1)].fn(t, y, dydt);
    }

    void eval_sum(Cplx t, const CVector& y, CVector& dydt) const { sum(t, y, dydt); }

    std::int64_t total_evals() const {
        std::int64_t n = 0;
        for (std::int64_t c : eval_counts) n += c;
        return n;
    }
};

/// Largest pointwise gap between the sum evaluator and the sum of the
/// operator evaluators over seeded random states; used to spot-check the
/// split's consistency.
inline double split_consistency_gap(const SplitOde& ode, int n_states = 100, std::uint64_t seed = 2024) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst = 0.0;
    CVector y(static_cast<std::size_t>(ode.dimension));
    CVector whole(y.size()), part(y.size()), acc(y.size());
    for (int s = 0; s < n_states; ++s) {
        for (Cplx& z : y) z = Cplx{dist(rng), dist(rng)};
        const Cplx t{dist(rng), 0.0};
        ode.eval_sum(t, y, whole);
        std::fill(acc.begin(), acc.end(), Cplx{0.0, 0.0});
        for (const auto& op : ode.operators) {
            op.fn(t, y, part);
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i];
        }
        worst = std::max(worst, max_abs_diff(whole, acc));
    }
    return worst;
}

}  // namespace nsplit
