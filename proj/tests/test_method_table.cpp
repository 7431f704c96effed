#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nsplit/method_table.hpp"
#include "nsplit/methods.hpp"

using namespace nsplit;

namespace {

MethodTable random_table(std::mt19937_64& rng, int max_stages = 5, int max_ops = 5) {
    std::uniform_int_distribution<int> sdist(1, max_stages), ndist(1, max_ops);
    std::uniform_real_distribution<double> cdist(-1.0, 1.0);
    std::bernoulli_distribution zero(0.3);
    MethodTable t;
    t.n_operators = ndist(rng);
    const int s = sdist(rng);
    t.design_order = 1;
    for (int k = 0; k < s; ++k) {
        std::vector<Cplx> row;
        for (int l = 0; l < t.n_operators; ++l)
            row.push_back(zero(rng) ? Cplx{0.0, 0.0} : Cplx{cdist(rng), cdist(rng)});
        t.stages.push_back(std::move(row));
    }
    return t;
}

}  // namespace

TEST_CASE("strang tables flatten to the palindromic sequence") {
    const FlowSequence seq = to_sequence(strang(3));
    const std::vector<FlowItem> expected = {
        {1, Cplx{0.5, 0.0}}, {2, Cplx{0.5, 0.0}}, {3, Cplx{1.0, 0.0}}, {2, Cplx{0.5, 0.0}}, {1, Cplx{0.5, 0.0}}};
    REQUIRE(seq.items.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(seq.items[i] == expected[i]);
}

TEST_CASE("lie_trotter flattens to one full step per operator") {
    const FlowSequence seq = to_sequence(lie_trotter(2));
    REQUIRE(seq.items.size() == 2);
    CHECK(seq.items[0] == FlowItem{1, Cplx{1.0, 0.0}});
    CHECK(seq.items[1] == FlowItem{2, Cplx{1.0, 0.0}});
}

TEST_CASE("an all-zero stage contributes nothing to the sequence") {
    MethodTable t = strang(3);
    t.stages.insert(t.stages.begin() + 1, std::vector<Cplx>(3, Cplx{0.0, 0.0}));
    CHECK(to_sequence(t) == to_sequence(strang(3)));
}

TEST_CASE("from_sequence greedily packs the strang sequence back into three stages") {
    FlowSequence seq;
    seq.n_operators = 3;
    seq.items = {{1, Cplx{0.5, 0.0}}, {2, Cplx{0.5, 0.0}}, {3, Cplx{1.0, 0.0}}, {2, Cplx{0.5, 0.0}}, {1, Cplx{0.5, 0.0}}};
    const MethodTable packed = from_sequence(seq);
    const MethodTable expected = strang(3);
    REQUIRE(packed.stage_count() == expected.stage_count());
    for (int k = 0; k < packed.stage_count(); ++k)
        for (int l = 0; l < 3; ++l) CHECK(packed.stages[k][l] == expected.stages[k][l]);
    CHECK(packed.design_order == 2);
}

TEST_CASE("empty sequences are rejected") {
    FlowSequence seq;
    seq.n_operators = 2;
    CHECK_THROWS_AS(from_sequence(seq), std::invalid_argument);
}

TEST_CASE("round trip through the sequence form is the identity on clt2(5)") {
    const MethodTable t = clt2(5);
    const MethodTable rt = simplify(t);
    REQUIRE(rt.stage_count() == t.stage_count());
    for (int k = 0; k < t.stage_count(); ++k)
        for (int l = 0; l < 5; ++l) CHECK(rt.stages[k][l] == t.stages[k][l]);
}

TEST_CASE("sequence round trips: to_sequence(from_sequence(s)) == s and simplify is idempotent") {
    std::mt19937_64 rng(2718);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const MethodTable t = random_table(rng);
        const FlowSequence seq = to_sequence(t);
        if (seq.items.empty()) continue;
        ++checked;
        CHECK(to_sequence(from_sequence(seq)) == seq);
        const MethodTable once = simplify(t);
        const MethodTable twice = simplify(once);
        CHECK(once.stages == twice.stages);
    }
    CHECK(checked > 200);
}

TEST_CASE("merging adjacent sub-flows of one operator sums their coefficients") {
    MethodTable t;
    t.n_operators = 2;
    t.design_order = 1;
    t.stages = {{Cplx{0.0, 0.0}, Cplx{0.25, 0.5}}, {Cplx{0.0, 0.0}, Cplx{0.5, -0.25}}, {Cplx{1.0, 0.0}, Cplx{0.0, 0.0}}};
    const FlowSequence seq = to_sequence(t);
    REQUIRE(seq.items.size() == 2);
    CHECK(seq.items[0] == FlowItem{2, Cplx{0.75, 0.25}});
    CHECK(seq.items[1] == FlowItem{1, Cplx{1.0, 0.0}});
}

TEST_CASE("order residuals: clt2 satisfies both orders to round-off for several N") {
    for (int n : {2, 3, 6}) {
        const OrderReport rep = order_residuals(clt2(n));
        CHECK(rep.max_residual(1) < 1e-15);
        CHECK(rep.max_residual(2) < 1e-15);
        CHECK(rep.satisfied_through == 2);
    }
}

TEST_CASE("order residuals: lie_trotter misses order 2 with residual exactly one half") {
    const OrderReport rep = order_residuals(lie_trotter(3));
    CHECK(rep.max_residual(1) == 0.0);
    REQUIRE(rep.order2.size() == 3);
    for (const auto& cond : rep.order2) CHECK(cond.residual == 0.5);
    CHECK(rep.satisfied_through == 1);
}

TEST_CASE("order residuals: strang(4) satisfies both orders to round-off") {
    const OrderReport rep = order_residuals(strang(4));
    CHECK(rep.max_residual(1) < 1e-15);
    CHECK(rep.max_residual(2) < 1e-15);
}

TEST_CASE("conjugating a table leaves all residual magnitudes unchanged") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        MethodTable t = random_table(rng, 4, 4);
        const OrderReport a = order_residuals(t);
        const OrderReport b = order_residuals(conjugated(t));
        REQUIRE(a.order1.size() == b.order1.size());
        for (std::size_t i = 0; i < a.order1.size(); ++i)
            CHECK(a.order1[i].residual == Catch::Approx(b.order1[i].residual).margin(1e-15));
        for (std::size_t i = 0; i < a.order2.size(); ++i)
            CHECK(a.order2[i].residual == Catch::Approx(b.order2[i].residual).margin(1e-15));
    }
}

TEST_CASE("positive real part predicate") {
    CHECK(has_positive_real_parts(strang(5)));
    CHECK(has_positive_real_parts(clt2(3)));
    MethodTable t = strang(2);
    t.stages[0][0] = Cplx{-0.25, 0.7};
    CHECK_FALSE(has_positive_real_parts(t));
    // exact zeros are skipped sub-flows, not sign violations
    CHECK(has_positive_real_parts(strang(4)));
}

TEST_CASE("design order checking rejects inflated claims") {
    MethodTable t = lie_trotter(3);
    t.design_order = 2;
    CHECK_THROWS_AS(check_design_order(t), std::invalid_argument);
}

TEST_CASE("invalid arities are rejected") {
    CHECK_THROWS_AS(lie_trotter(0), std::invalid_argument);
    CHECK_THROWS_AS(strang(0), std::invalid_argument);
    CHECK_THROWS_AS(clt2(1), std::invalid_argument);
}
