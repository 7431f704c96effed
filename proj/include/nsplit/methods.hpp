#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nsplit/method_table.hpp"

namespace nsplit {

/// First-order N-split splitting: one full step in every operator.
inline MethodTable lie_trotter(int n_operators) {
    if (n_operators < 1) throw std::invalid_argument("lie_trotter: n_operators must be >= 1");
    MethodTable t;
    t.name = "lt";
    t.n_operators = n_operators;
    t.stages = {std::vector<Cplx>(static_cast<std::size_t>(n_operators), Cplx{1.0, 0.0})};
    t.design_order = 1;
    check_design_order(t);
    return t;
}

/// Second-order N-split symmetric splitting, packed into increasing-operator
/// stages: stage 1 is (1/2, ..., 1/2, 1), stage k (k = 2..N) holds a single
/// 1/2 in column N-k+1.
inline MethodTable strang(int n_operators) {
    if (n_operators < 1) throw std::invalid_argument("strang: n_operators must be >= 1");
    MethodTable t;
    t.name = "strang";
    t.n_operators = n_operators;
    t.design_order = 2;
    if (n_operators == 1) {
        t.stages = {{Cplx{1.0, 0.0}}};
        check_design_order(t);
        return t;
    }
    t.stages.assign(static_cast<std::size_t>(n_operators),
                    std::vector<Cplx>(static_cast<std::size_t>(n_operators), Cplx{0.0, 0.0}));
    for (int l = 0; l < n_operators - 1; ++l) t.stages[0][static_cast<std::size_t>(l)] = 0.5;
    t.stages[0][static_cast<std::size_t>(n_operators - 1)] = 1.0;
    for (int k = 1; k < n_operators; ++k) t.stages[static_cast<std::size_t>(k)][static_cast<std::size_t>(n_operators - 1 - k)] = 0.5;
    check_design_order(t);
    return t;
}

/// The two-stage, second-order, N-split pair with coefficients
/// 1/2 +- i/2 (stage 1) and 1/2 -+ i/2 (stage 2) in every column.
/// conjugate = false selects the upper signs.
inline MethodTable clt2(int n_operators, bool conjugate = false) {
    if (n_operators < 2) throw std::invalid_argument("clt2: defined for splittings, n_operators must be >= 2");
    const Cplx gamma = conjugate ? Cplx{0.5, -0.5} : Cplx{0.5, 0.5};
    MethodTable t;
    t.name = conjugate ? "clt2-conj" : "clt2";
    t.n_operators = n_operators;
    t.stages = {std::vector<Cplx>(static_cast<std::size_t>(n_operators), gamma),
                std::vector<Cplx>(static_cast<std::size_t>(n_operators), std::conj(gamma))};
    t.design_order = 2;
    check_design_order(t);
    return t;
}

/// One-parameter family of two-stage, second-order, 2-split methods:
///   stage 1: ( (2b-1)/(2b-2), 1-b )
///   stage 2: ( 1/(2-2b),      b   )
/// At b = 1/2 - i/2 this reduces to clt2(2).
inline MethodTable two_split_family(Cplx b) {
    if (b == Cplx{1.0, 0.0}) throw std::invalid_argument("two_split_family: b = 1 makes the method singular");
    MethodTable t;
    t.name = "family2";
    t.n_operators = 2;
    t.stages = {{(2.0 * b - 1.0) / (2.0 * b - 2.0), 1.0 - b},
                {1.0 / (2.0 - 2.0 * b), b}};
    t.design_order = 2;
    check_design_order(t);
    return t;
}

/// Conjugate pair of scaling factors used to raise a method of order
/// target_order-1 to target_order by a two-term composition.
struct CompositionPair {
    int target_order = 0;
    Cplx sigma1{0.0, 0.0};
    Cplx sigma2{0.0, 0.0};
};

/// sigma_{p,1} = 1/2 + i sin(pi/p) / (2 + 2 cos(pi/p)), sigma_{p,2} its
/// conjugate. The pair sums to 1 and satisfies sigma1^p + sigma2^p = 0, the
/// composition condition for an order p-1 base. Restricted to p in [3, 6]:
/// the factor phases add up across a composition chain, and past p = 6 the
/// composed coefficients no longer keep positive real parts.
inline CompositionPair composition_sigma(int p) {
    if (p < 3 || p > 6)
        throw std::invalid_argument(
            "composition_sigma: order " + std::to_string(p) +
            " outside [3,6]; the chain only preserves positive real parts up to order 6");
    const double angle = std::numbers::pi / p;
    CompositionPair pair;
    pair.target_order = p;
    pair.sigma1 = Cplx{0.5, std::sin(angle) / (2.0 + 2.0 * std::cos(angle))};
    pair.sigma2 = std::conj(pair.sigma1);

    if (std::abs(pair.sigma1 + pair.sigma2 - 1.0) > 1e-15)
        throw std::logic_error("composition_sigma: pair does not sum to 1");
    if (std::abs(std::pow(pair.sigma1, p) + std::pow(pair.sigma2, p)) > 1e-14)
        throw std::logic_error("composition_sigma: composition condition violated");
    return pair;
}

/// Two-term composition: run the base scaled by sigma1, then by sigma2, and
/// pack the result into canonical stages (adjacent same-operator sub-flows
/// merge, which is what keeps the Strang-based chains at 2N-1 stages).
inline MethodTable compose(const MethodTable& base, const CompositionPair& pair) {
    if (base.design_order != pair.target_order - 1)
        throw std::invalid_argument("compose: base of order " + std::to_string(base.design_order) +
                                    " does not match composition targeting order " +
                                    std::to_string(pair.target_order));
    MethodTable cat;
    cat.name = base.name + "-p" + std::to_string(pair.target_order);
    cat.n_operators = base.n_operators;
    cat.design_order = pair.target_order;
    const MethodTable first = scaled(base, pair.sigma1);
    const MethodTable second = scaled(base, pair.sigma2);
    cat.stages = first.stages;
    cat.stages.insert(cat.stages.end(), second.stages.begin(), second.stages.end());
    MethodTable out = simplify(cat);
    check_design_order(out);
    return out;
}

}  // namespace nsplit
