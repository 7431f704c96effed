#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "nsplit/catalog.hpp"
#include "nsplit/linalg.hpp"
#include "nsplit/methods.hpp"
#include "nsplit/serialize.hpp"

using namespace nsplit;

TEST_CASE("lie_trotter builds unit steps in every operator") {
    const MethodTable t = lie_trotter(3);
    REQUIRE(t.stage_count() == 1);
    for (int l = 0; l < 3; ++l) CHECK(t.stages[0][l] == Cplx{1.0, 0.0});
    CHECK(t.design_order == 1);
    CHECK(lie_trotter(1).stages == std::vector<std::vector<Cplx>>{{Cplx{1.0, 0.0}}});
}

TEST_CASE("strang packs into the canonical stage form") {
    const MethodTable t2 = strang(2);
    CHECK(t2.stages == std::vector<std::vector<Cplx>>{{{0.5, 0.0}, {1.0, 0.0}}, {{0.5, 0.0}, {0.0, 0.0}}});
    const MethodTable t3 = strang(3);
    CHECK(t3.stages == std::vector<std::vector<Cplx>>{{{0.5, 0.0}, {0.5, 0.0}, {1.0, 0.0}},
                                                      {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.0}},
                                                      {{0.5, 0.0}, {0.0, 0.0}, {0.0, 0.0}}});
    CHECK(strang(1).stages == std::vector<std::vector<Cplx>>{{Cplx{1.0, 0.0}}});
}

TEST_CASE("clt2 stage coefficients and conjugate pairing") {
    const MethodTable t = clt2(4, false);
    REQUIRE(t.stage_count() == 2);
    for (int l = 0; l < 4; ++l) {
        CHECK(t.stages[0][l] == Cplx{0.5, 0.5});
        CHECK(t.stages[1][l] == Cplx{0.5, -0.5});
    }
    // the order-2 products are exactly 1/2
    for (int l1 = 0; l1 < 3; ++l1)
        for (int l2 = l1 + 1; l2 < 4; ++l2) CHECK(t.stages[1][l1] * t.stages[0][l2] == Cplx{0.5, 0.0});

    const MethodTable conj = clt2(5, true);
    const MethodTable plain = clt2(5, false);
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 5; ++l) CHECK(conj.stages[k][l] == std::conj(plain.stages[k][l]));
}

TEST_CASE("two_split_family at b = 1/2 and at the clt2-reducing parameter") {
    const MethodTable half = two_split_family(Cplx{0.5, 0.0});
    CHECK(half.stages == std::vector<std::vector<Cplx>>{{{0.0, 0.0}, {0.5, 0.0}}, {{1.0, 0.0}, {0.5, 0.0}}});
    const OrderReport rep = order_residuals(half);
    CHECK(rep.max_residual(1) == 0.0);
    CHECK(rep.max_residual(2) == 0.0);

    const MethodTable reduced = two_split_family(Cplx{0.5, -0.5});
    const MethodTable target = clt2(2, false);
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) CHECK(std::abs(reduced.stages[k][l] - target.stages[k][l]) < 1e-15);

    CHECK_THROWS_AS(two_split_family(Cplx{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("two_split_family satisfies both order conditions across parameters") {
    for (Cplx b : {Cplx{2.0, 0.0}, Cplx{0.3, 0.7}, Cplx{-1.0, 0.25}, Cplx{0.5, -0.5}, Cplx{-0.2, -1.1}}) {
        const OrderReport rep = order_residuals(two_split_family(b));
        CHECK(rep.max_residual(1) < 1e-12);
        CHECK(rep.max_residual(2) < 1e-12);
    }
}

TEST_CASE("composition_sigma: explicit value at p = 3 and the pair identities") {
    const CompositionPair p3 = composition_sigma(3);
    CHECK(std::abs(p3.sigma1 - Cplx{0.5, std::sqrt(3.0) / 6.0}) < 1e-16);
    CHECK(p3.sigma2 == std::conj(p3.sigma1));
    for (int p = 3; p <= 6; ++p) {
        const CompositionPair pair = composition_sigma(p);
        CHECK(std::abs(pair.sigma1 + pair.sigma2 - 1.0) == 0.0);
        // composition condition for the order p-1 base raised to order p
        CHECK(std::abs(std::pow(pair.sigma1, p) + std::pow(pair.sigma2, p)) < 1e-14);
    }
    CHECK_THROWS_AS(composition_sigma(7), std::invalid_argument);
    CHECK_THROWS_AS(composition_sigma(2), std::invalid_argument);
}

TEST_CASE("composing clt2 reproduces the four-stage third-order table") {
    const MethodTable t = compose(clt2(4, false), composition_sigma(3));
    REQUIRE(t.stage_count() == 4);
    const double r = 1.0 / (4.0 * std::sqrt(3.0));
    const Cplx expected[4] = {Cplx{0.25 - r, 0.25 + r}, Cplx{0.25 + r, -0.25 + r}, Cplx{0.25 + r, 0.25 - r},
                              Cplx{0.25 - r, -0.25 - r}};
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) CHECK(std::abs(t.stages[k][l] - expected[k]) < 1e-15);
    CHECK(t.design_order == 3);
    CHECK(has_positive_real_parts(t));
    CHECK(std::abs(expected[0].real() - 0.10566243270259356) < 1e-15);
}

TEST_CASE("composing strang yields the merged (2N-1)-stage third-order table") {
    for (int n : {3, 4, 5}) {
        const MethodTable t = compose(strang(n), composition_sigma(3));
        const Cplx s1 = composition_sigma(3).sigma1;
        const Cplx s2 = std::conj(s1);
        REQUIRE(t.stage_count() == 2 * n - 1);
        // first sweep
        for (int l = 0; l < n - 1; ++l) CHECK(std::abs(t.stages[0][l] - 0.5 * s1) < 1e-15);
        CHECK(std::abs(t.stages[0][n - 1] - s1) < 1e-15);
        for (int k = 1; k < n - 1; ++k)
            for (int l = 0; l < n; ++l) {
                const Cplx want = (l == n - 1 - k) ? 0.5 * s1 : Cplx{0.0, 0.0};
                CHECK(std::abs(t.stages[k][l] - want) < 1e-15);
            }
        // merged middle stage: (s1+s2)/2 in column 1, then the s2 sweep
        CHECK(std::abs(t.stages[n - 1][0] - 0.5 * (s1 + s2)) < 1e-15);
        for (int l = 1; l < n - 1; ++l) CHECK(std::abs(t.stages[n - 1][l] - 0.5 * s2) < 1e-15);
        CHECK(std::abs(t.stages[n - 1][n - 1] - s2) < 1e-15);
        for (int k = n; k < 2 * n - 2; ++k)
            for (int l = 0; l < n; ++l) {
                const Cplx want = (l == 2 * n - 2 - k) ? 0.5 * s2 : Cplx{0.0, 0.0};
                CHECK(std::abs(t.stages[k][l] - want) < 1e-15);
            }
        for (int l = 0; l < n; ++l) {
            const Cplx want = (l == 0) ? 0.5 * s2 : Cplx{0.0, 0.0};
            CHECK(std::abs(t.stages[2 * n - 2][l] - want) < 1e-15);
        }
    }
}

TEST_CASE("compose rejects order mismatches") {
    CHECK_THROWS_AS(compose(lie_trotter(3), composition_sigma(3)), std::invalid_argument);
    CHECK_THROWS_AS(compose(clt2(3), composition_sigma(4)), std::invalid_argument);
}

TEST_CASE("composed tables keep unit column sums") {
    for (int p = 3; p <= 6; ++p) {
        const MethodTable t = make_method("cstrang" + std::to_string(p), 4);
        for (int l = 0; l < 4; ++l) {
            Cplx sum{0.0, 0.0};
            for (int k = 0; k < t.stage_count(); ++k) sum += t.stages[k][l];
            CHECK(std::abs(sum - 1.0) < 1e-14);
        }
    }
}

TEST_CASE("strang composition chains keep positive real parts through order 6, not 7") {
    MethodTable t = strang(4);
    for (int p = 3; p <= 6; ++p) {
        t = compose(t, composition_sigma(p));
        CHECK(has_positive_real_parts(t));
    }
    // forcing one more composition with the would-be order-7 pair flips signs
    const double angle = std::numbers::pi / 7.0;
    CompositionPair p7;
    p7.target_order = 7;
    p7.sigma1 = Cplx{0.5, std::sin(angle) / (2.0 + 2.0 * std::cos(angle))};
    p7.sigma2 = std::conj(p7.sigma1);
    CHECK_FALSE(has_positive_real_parts(compose(t, p7)));
}

TEST_CASE("clt2-based chains lose positive real parts beyond order 3") {
    CHECK(has_positive_real_parts(make_method("clt3", 3)));
    CHECK_FALSE(has_positive_real_parts(make_method("clt4", 3)));
}

TEST_CASE("only the two clt2 tables solve the two-stage order conditions for N = 3") {
    // Newton root search on the full order-condition system in the six stage
    // coefficients (square for N = 3), from a dense set of seeded random
    // starts; every converged root must land on clt2 or its conjugate.
    const int n = 3;
    const auto residual = [&](const std::vector<Cplx>& a, CVector& f) {
        // unknowns: a[0..2] = stage-1, a[3..5] = stage-2 coefficients
        f.resize(6);
        for (int l = 0; l < n; ++l) f[l] = a[l] + a[3 + l] - 1.0;
        int idx = 3;
        for (int l1 = 0; l1 < n - 1; ++l1)
            for (int l2 = l1 + 1; l2 < n; ++l2) f[idx++] = a[3 + l1] * a[l2] - 0.5;
    };
    const auto jacobian = [&](const std::vector<Cplx>& a) {
        ComplexMatrix j(6);
        for (int l = 0; l < n; ++l) {
            j(l, l) = 1.0;
            j(l, 3 + l) = 1.0;
        }
        int idx = 3;
        for (int l1 = 0; l1 < n - 1; ++l1)
            for (int l2 = l1 + 1; l2 < n; ++l2) {
                j(idx, 3 + l1) = a[l2];
                j(idx, l2) = a[3 + l1];
                ++idx;
            }
        return j;
    };

    std::mt19937_64 rng(314159);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<std::vector<Cplx>> roots;
    int converged = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<Cplx> a(6);
        for (Cplx& z : a) z = Cplx{dist(rng), dist(rng)};
        CVector f;
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            residual(a, f);
            double fnorm = norm2(f);
            if (fnorm < 1e-13) {
                ok = true;
                break;
            }
            CVector step;
            try {
                step = solve_linear(jacobian(a), f);
            } catch (const std::runtime_error&) {
                break;
            }
            for (int i = 0; i < 6; ++i) a[i] -= step[i];
        }
        if (!ok) continue;
        ++converged;
        bool known = false;
        for (const auto& r : roots) {
            double d = 0.0;
            for (int i = 0; i < 6; ++i) d = std::max(d, std::abs(r[i] - a[i]));
            if (d < 1e-8) known = true;
        }
        if (!known) roots.push_back(a);
    }
    REQUIRE(converged > 100);
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) {
        const double to_plus = std::abs(r[0] - Cplx{0.5, 0.5});
        const Cplx stage1 = to_plus < 0.5 ? Cplx{0.5, 0.5} : Cplx{0.5, -0.5};
        for (int l = 0; l < 3; ++l) {
            CHECK(std::abs(r[l] - stage1) < 1e-10);
            CHECK(std::abs(r[3 + l] - std::conj(stage1)) < 1e-10);
        }
    }
}

TEST_CASE("method tables survive a serialization round trip") {
    for (const char* id : {"clt2", "clt3", "cstrang3"}) {
        const MethodTable t = make_method(id, 4);
        const MethodTable rt = method_table_from_json_text(to_json_text(t));
        CHECK(rt.name == t.name);
        CHECK(rt.n_operators == t.n_operators);
        CHECK(rt.design_order == t.design_order);
        CHECK(rt.stages == t.stages);
    }
}

TEST_CASE("deserialization rejects tables whose claimed order fails the conditions") {
    nlohmann::json j = to_json(clt2(3));
    j["stages"][0][0] = {0.25, 0.5};  // break an order-1 column sum
    CHECK_THROWS_AS(method_table_from_json(j), std::invalid_argument);
}

TEST_CASE("catalog ids build the advertised tables") {
    CHECK(make_method("lt", 3).stage_count() == 1);
    CHECK(make_method("lt-3", 5).stage_count() == 1);       // suffix wins over the argument
    CHECK(make_method("lt-3", 5).n_operators == 3);
    CHECK(make_method("strang-4", 2).n_operators == 4);
    CHECK(make_method("clt2", 6).n_operators == 6);
    CHECK(make_method("clt2-conj", 3).stages[0][0] == Cplx{0.5, -0.5});
    CHECK(make_method("cstrang3", 4).stage_count() == 7);
    CHECK(make_method("clt3", 5).design_order == 3);
    CHECK(make_method("clt6", 2).design_order == 6);
    CHECK(make_method("family2(0.5)", 2).stages[1][1] == Cplx{0.5, 0.0});
    CHECK(std::abs(make_method("family2(0.5-0.5i)", 2).stages[0][0] - Cplx{0.5, 0.5}) < 1e-15);
    CHECK_THROWS_AS(make_method("unknown", 3), std::invalid_argument);
    CHECK_THROWS_AS(make_method("family2(1)", 2), std::invalid_argument);
}
