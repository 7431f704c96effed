#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "nsplit/fitting.hpp"
#include "nsplit/linalg.hpp"
#include "nsplit/method_table.hpp"

namespace nsplit {

/// A set of N square complex matrices acting as generically non-commuting
/// split operators for order verification on linear problems.
struct MatrixSet {
    int n_operators = 0;
    int dimension = 0;
    std::vector<ComplexMatrix> matrices;
    std::uint64_t rng_seed = 0;
};

inline void validate_matrix_set(const MatrixSet& ms) {
    if (ms.n_operators < 1 || static_cast<int>(ms.matrices.size()) != ms.n_operators)
        throw std::invalid_argument("MatrixSet: matrix count does not match n_operators");
    for (const auto& m : ms.matrices)
        if (m.dim() != ms.dimension) throw std::invalid_argument("MatrixSet: dimension mismatch");
}

/// Matrices with entries uniform on [-scale, scale] in both real and
/// imaginary parts; same seed, same set.
inline MatrixSet random_matrix_set(int n_operators, int dimension, std::uint64_t seed, double scale = 1.0) {
    if (n_operators < 1 || dimension < 1) throw std::invalid_argument("random_matrix_set: invalid arity");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-scale, scale);
    MatrixSet ms;
    ms.n_operators = n_operators;
    ms.dimension = dimension;
    ms.rng_seed = seed;
    for (int k = 0; k < n_operators; ++k) {
        ComplexMatrix m(dimension);
        for (int i = 0; i < dimension; ++i)
            for (int j = 0; j < dimension; ++j) {
                const double re = dist(rng);
                const double im = dist(rng);
                m(i, j) = Cplx{re, im};
            }
        ms.matrices.push_back(std::move(m));
    }
    return ms;
}

/// Taylor coefficients of Z_N(t) with exp(t X_1) ... exp(t X_N) = exp(Z_N(t)),
/// Z_N(t) = t Z1 + t^2 Z2 + t^3 Z3 + O(t^4).
struct BchTerms {
    ComplexMatrix z1, z2, z3;
};

inline BchTerms bch_terms(const MatrixSet& ms) {
    validate_matrix_set(ms);
    if (ms.n_operators < 2) throw std::invalid_argument("bch_terms: need at least two operators");
    const int n = ms.n_operators;
    const int d = ms.dimension;
    const auto& x = ms.matrices;

    BchTerms out{ComplexMatrix(d), ComplexMatrix(d), ComplexMatrix(d)};
    for (int i = 0; i < n; ++i) out.z1 += x[static_cast<std::size_t>(i)];

    for (int i = 0; i < n - 1; ++i)
        for (int j = i + 1; j < n; ++j)
            out.z2 += Cplx{0.5, 0.0} * commutator(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]);

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            out.z3 += Cplx{1.0 / 12.0, 0.0} *
                      commutator(x[static_cast<std::size_t>(i)],
                                 commutator(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]));
        }
    for (int i = 0; i < n - 2; ++i)
        for (int j = i + 1; j < n - 1; ++j)
            for (int k = j + 1; k < n; ++k) {
                const auto& xi = x[static_cast<std::size_t>(i)];
                const auto& xj = x[static_cast<std::size_t>(j)];
                const auto& xk = x[static_cast<std::size_t>(k)];
                out.z3 += Cplx{1.0 / 6.0, 0.0} * (commutator(xi, commutator(xj, xk)) + commutator(commutator(xi, xj), xk));
            }
    return out;
}

/// exp(t X_1) exp(t X_2) ... exp(t X_N), X_1 leftmost.
inline ComplexMatrix product_of_exponentials(const MatrixSet& ms, Cplx t) {
    validate_matrix_set(ms);
    ComplexMatrix prod = ComplexMatrix::identity(ms.dimension);
    for (const auto& x : ms.matrices) prod = prod * expm(t * x);
    return prod;
}

/// Frobenius distance between exp(t Z1 + t^2 Z2 + t^3 Z3) and the exact
/// product of exponentials; O(t^4) for non-commuting sets.
inline double truncation_error(const MatrixSet& ms, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("truncation_error: t must be positive");
    const BchTerms z = bch_terms(ms);
    const ComplexMatrix approx = expm(Cplx{t, 0.0} * z.z1 + Cplx{t * t, 0.0} * z.z2 + Cplx{t * t * t, 0.0} * z.z3);
    return frobenius_distance(approx, product_of_exponentials(ms, Cplx{t, 0.0}));
}

/// Frobenius distance between the one-step splitting map and exp(t sum X_l).
/// Sub-flows are applied in table order (stage 1 operator 1 first), i.e. each
/// successive exponential multiplies from the left.
inline double splitting_defect(const MethodTable& table, const MatrixSet& ms, double t) {
    validate_matrix_set(ms);
    if (table.n_operators != ms.n_operators) throw std::invalid_argument("splitting_defect: operator arity mismatch");
    const FlowSequence seq = to_sequence(table);
    ComplexMatrix split = ComplexMatrix::identity(ms.dimension);
    for (const FlowItem& it : seq.items)
        split = expm(it.coeff * Cplx{t, 0.0} * ms.matrices[static_cast<std::size_t>(it.op - 1)]) * split;

    ComplexMatrix sum(ms.dimension);
    for (const auto& x : ms.matrices) sum += x;
    return frobenius_distance(split, expm(Cplx{t, 0.0} * sum));
}

/// Fitted slope of log(defect) against log(t), minus one: the one-step defect
/// of an order-p method scales as t^{p+1}. Defects at the round-off floor are
/// dropped from the fit.
inline double empirical_order(const MethodTable& table, const MatrixSet& ms, std::span<const double> t_values) {
    if (t_values.size() < 3) throw std::invalid_argument("empirical_order: need at least three step sizes");
    std::vector<double> ts;
    std::vector<double> defects;
    for (double t : t_values) {
        const double d = splitting_defect(table, ms, t);
        if (d <= 1e-13) continue;  // round-off dominated
        ts.push_back(t);
        defects.push_back(d);
    }
    if (ts.size() < 2)
        throw std::runtime_error("empirical_order: defects are round-off dominated at the given step sizes");
    return fit_loglog_slope(ts, defects) - 1.0;
}

}  // namespace nsplit
