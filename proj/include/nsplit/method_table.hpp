#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsplit/linalg.hpp"

namespace nsplit {

/// Coefficient table of an s-stage, N-split operator-splitting method.
/// Stage k applies the sub-flows of operators 1..N in increasing order,
/// operator l over the step fraction stages[k][l-1]. A coefficient that is
/// exactly zero means the sub-flow is skipped entirely.
struct MethodTable {
    std::string name;
    int n_operators = 0;
    std::vector<std::vector<Cplx>> stages;  // s rows, n_operators columns
    int design_order = 0;

    int stage_count() const { return static_cast<int>(stages.size()); }
};

/// One sub-flow of a flattened method: operator index (1-based) and the
/// complex fraction of the step it advances.
struct FlowItem {
    int op = 0;
    Cplx coeff{0.0, 0.0};

    friend bool operator==(const FlowItem& a, const FlowItem& b) {
        return a.op == b.op && a.coeff == b.coeff;
    }
};

/// Canonical flattened form of a method: zero coefficients dropped,
/// consecutive sub-flows of the same operator merged.
struct FlowSequence {
    int n_operators = 0;
    std::vector<FlowItem> items;

    friend bool operator==(const FlowSequence& a, const FlowSequence& b) {
        return a.n_operators == b.n_operators && a.items == b.items;
    }
};

inline void validate_shape(const MethodTable& t) {
    if (t.n_operators < 1) throw std::invalid_argument("MethodTable: n_operators must be >= 1");
    if (t.stages.empty()) throw std::invalid_argument("MethodTable: at least one stage required");
    for (const auto& row : t.stages)
        if (static_cast<int>(row.size()) != t.n_operators)
            throw std::invalid_argument("MethodTable: stage width does not match n_operators");
}

inline MethodTable conjugated(const MethodTable& t) {
    MethodTable c = t;
    for (auto& row : c.stages)
        for (Cplx& z : row) z = std::conj(z);
    return c;
}

inline MethodTable scaled(const MethodTable& t, Cplx sigma) {
    MethodTable s = t;
    for (auto& row : s.stages)
        for (Cplx& z : row) z *= sigma;
    return s;
}

/// Flatten to the canonical sequence: stages in order, operators 1..N within
/// each stage; exact zeros dropped, adjacent same-operator items merged.
inline FlowSequence to_sequence(const MethodTable& t) {
    validate_shape(t);
    FlowSequence seq;
    seq.n_operators = t.n_operators;
    for (const auto& row : t.stages) {
        for (int l = 1; l <= t.n_operators; ++l) {
            const Cplx c = row[static_cast<std::size_t>(l - 1)];
            if (c == Cplx{0.0, 0.0}) continue;
            if (!seq.items.empty() && seq.items.back().op == l) {
                seq.items.back().coeff += c;
                if (seq.items.back().coeff == Cplx{0.0, 0.0}) seq.items.pop_back();
            } else {
                seq.items.push_back({l, c});
            }
        }
    }
    return seq;
}

inline void validate_sequence(const FlowSequence& seq) {
    if (seq.n_operators < 1) throw std::invalid_argument("FlowSequence: n_operators must be >= 1");
    if (seq.items.empty()) throw std::invalid_argument("FlowSequence: empty sequence");
    int prev = 0;
    for (const FlowItem& it : seq.items) {
        if (it.op < 1 || it.op > seq.n_operators) throw std::invalid_argument("FlowSequence: operator index out of range");
        if (it.coeff == Cplx{0.0, 0.0}) throw std::invalid_argument("FlowSequence: zero coefficient");
        if (it.op == prev) throw std::invalid_argument("FlowSequence: consecutive items share an operator");
        prev = it.op;
    }
}

/// Greedy packing into Definition-style stages: a new stage starts whenever
/// the next operator index does not increase.
inline MethodTable from_sequence(const FlowSequence& seq, std::string name = {}, int design_order_hint = 0);

/// Canonical form: from_sequence(to_sequence(t)). The flattened sub-flow
/// sequence, and hence any integration driven by it, is unchanged.
inline MethodTable simplify(const MethodTable& t) {
    return from_sequence(to_sequence(t), t.name, t.design_order);
}

/// Residuals of the splitting order conditions at orders 1 and 2, computed
/// two ways: the closed-form sums and the stage recursion for the c^1/c^2
/// expansion coefficients. The two routes must agree to round-off.
struct OrderCondition {
    std::string id;
    double residual = 0.0;   // |condition - required value|
    Cplx recursion_value{};  // c^1_{l,s} resp. c^2_{l1,l2,s}
};

struct OrderReport {
    std::vector<OrderCondition> order1;
    std::vector<OrderCondition> order2;
    int satisfied_through = 0;

    double max_residual(int order) const {
        const auto& v = order == 1 ? order1 : order2;
        double m = 0.0;
        for (const auto& c : v) m = std::max(m, c.residual);
        return m;
    }
};

inline OrderReport order_residuals(const MethodTable& t, double tol = 1e-12) {
    validate_shape(t);
    const int n = t.n_operators;
    const int s = t.stage_count();

    // Stage recursion for the expansion coefficients of the composed method:
    //   c1_{l,k}      = c1_{l,k-1} + a_k^l
    //   c2_{l1,l2,k}  = c2_{l1,l2,k-1} + (a_k^l1 a_k^l2)/2
    //                   + (c1_{l1,k-1} a_k^l2 - a_k^l1 c1_{l2,k-1})/2
    // so that the order-2 conditions read c2_{l1,l2,s} = 0.
    std::vector<Cplx> c1(static_cast<std::size_t>(n), Cplx{0.0, 0.0});
    std::vector<std::vector<Cplx>> c2(static_cast<std::size_t>(n),
                                      std::vector<Cplx>(static_cast<std::size_t>(n), Cplx{0.0, 0.0}));
    for (int k = 0; k < s; ++k) {
        const auto& row = t.stages[static_cast<std::size_t>(k)];
        for (int l1 = 0; l1 < n - 1; ++l1)
            for (int l2 = l1 + 1; l2 < n; ++l2) {
                const Cplx a1 = row[static_cast<std::size_t>(l1)];
                const Cplx a2 = row[static_cast<std::size_t>(l2)];
                c2[static_cast<std::size_t>(l1)][static_cast<std::size_t>(l2)] +=
                    0.5 * a1 * a2 + 0.5 * (c1[static_cast<std::size_t>(l1)] * a2 - a1 * c1[static_cast<std::size_t>(l2)]);
            }
        for (int l = 0; l < n; ++l) c1[static_cast<std::size_t>(l)] += row[static_cast<std::size_t>(l)];
    }

    OrderReport rep;
    for (int l = 0; l < n; ++l) {
        Cplx sum{0.0, 0.0};
        for (int k = 0; k < s; ++k) sum += t.stages[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
        OrderCondition c;
        c.id = "c1_" + std::to_string(l + 1);
        c.residual = std::abs(sum - Cplx{1.0, 0.0});
        c.recursion_value = c1[static_cast<std::size_t>(l)];
        if (std::abs(sum - c.recursion_value) > 1e-15)
            throw std::logic_error("order_residuals: order-1 closed form and recursion disagree");
        rep.order1.push_back(std::move(c));
    }
    for (int l1 = 0; l1 < n - 1; ++l1)
        for (int l2 = l1 + 1; l2 < n; ++l2) {
            // Closed form: sum_{k>=2} a_k^{l1} (sum_{j<k} a_j^{l2}) = 1/2.
            Cplx prefix{0.0, 0.0};
            Cplx sum{0.0, 0.0};
            for (int k = 0; k < s; ++k) {
                if (k > 0) sum += t.stages[static_cast<std::size_t>(k)][static_cast<std::size_t>(l1)] * prefix;
                prefix += t.stages[static_cast<std::size_t>(k)][static_cast<std::size_t>(l2)];
            }
            OrderCondition c;
            c.id = "c2_" + std::to_string(l1 + 1) + "_" + std::to_string(l2 + 1);
            c.residual = std::abs(sum - Cplx{0.5, 0.0});
            c.recursion_value = c2[static_cast<std::size_t>(l1)][static_cast<std::size_t>(l2)];
            // Identically c2_s = 1/2 - S when the order-1 sums equal 1.
            if (rep.order1[static_cast<std::size_t>(l1)].residual < 1e-13 &&
                rep.order1[static_cast<std::size_t>(l2)].residual < 1e-13 &&
                std::abs(c.recursion_value - (Cplx{0.5, 0.0} - sum)) > 1e-15)
                throw std::logic_error("order_residuals: order-2 closed form and recursion disagree");
            rep.order2.push_back(std::move(c));
        }

    rep.satisfied_through = 0;
    if (rep.max_residual(1) <= tol) {
        rep.satisfied_through = 1;
        if (rep.order2.empty() || rep.max_residual(2) <= tol) rep.satisfied_through = 2;
    }
    return rep;
}

inline bool has_positive_real_parts(const MethodTable& t) {
    validate_shape(t);
    for (const auto& row : t.stages)
        for (const Cplx& z : row)
            if (z != Cplx{0.0, 0.0} && z.real() <= 0.0) return false;
    return true;
}

/// Checks that design_order is consistent with the order conditions that can
/// be evaluated symbolically (orders 1 and 2). Higher claimed orders are
/// verified empirically on matrix problems.
inline void check_design_order(const MethodTable& t, double tol = 1e-12) {
    validate_shape(t);
    if (t.design_order < 1) throw std::invalid_argument("MethodTable: design_order must be >= 1");
    const OrderReport rep = order_residuals(t, tol);
    const int checkable = std::min(t.design_order, 2);
    if (rep.satisfied_through < checkable)
        throw std::invalid_argument("MethodTable '" + t.name + "': order conditions at p <= " +
                                    std::to_string(checkable) + " violated (max residual " +
                                    std::to_string(std::max(rep.max_residual(1), rep.max_residual(2))) + ")");
}

inline MethodTable from_sequence(const FlowSequence& seq, std::string name, int design_order_hint) {
    validate_sequence(seq);
    MethodTable t;
    t.name = std::move(name);
    t.n_operators = seq.n_operators;
    int prev = seq.n_operators + 1;  // force a new stage for the first item
    for (const FlowItem& it : seq.items) {
        if (it.op <= prev) t.stages.emplace_back(static_cast<std::size_t>(seq.n_operators), Cplx{0.0, 0.0});
        t.stages.back()[static_cast<std::size_t>(it.op - 1)] = it.coeff;
        prev = it.op;
    }
    t.design_order = design_order_hint > 0 ? design_order_hint
                                           : std::max(1, order_residuals(t).satisfied_through);
    return t;
}

}  // namespace nsplit
