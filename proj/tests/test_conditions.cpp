#include <stargraph/conditions.hpp>

#include <stargraph/basis.hpp>

#include "oracle_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace stargraph;

namespace {
Params params_n(int n) { return Params(n, Rat(3) / 2, Rat(5) / 7, Rat(2)); }

DiagTrace make_trace(Rat cc, Rat cs, Rat sc, Rat ss) { return {std::move(cc), std::move(cs), std::move(sc), std::move(ss)}; }

const DiagTrace zero_trace{Rat(0), Rat(0), Rat(0), Rat(0)};
}  // namespace

TEST_CASE("diagonal traces merge the two assignments into one slot basis") {
    const Params p = params_n(3);
    SECTION("cos * cos lands on cc under either assignment") {
        for (const Assign a : {Assign::K12, Assign::K21}) {
            Wave w(p);
            w.set_coeff(Region::lower(1), TrigMonomial{a, Trig::Cos, Trig::Cos}, Rat(1));
            REQUIRE(diag_value(w, 1, Side::Lower) == make_trace(Rat(1), Rat(0), Rat(0), Rat(0)));
            REQUIRE(diag_value(w, 1, Side::Upper) == zero_trace);
            REQUIRE(diag_value(w, 2, Side::Lower) == zero_trace);
        }
    }
    SECTION("mixed factors swap slots between assignments") {
        Wave w(p);
        // sin(k1 x) cos(k2 y) restricted to x = y = t is sin(k1 t) cos(k2 t): slot sc
        w.set_coeff(Region::upper(2), TrigMonomial{Assign::K12, Trig::Sin, Trig::Cos}, Rat(1));
        REQUIRE(diag_value(w, 2, Side::Upper) == make_trace(Rat(0), Rat(0), Rat(1), Rat(0)));
        Wave v(p);
        // sin(k2 x) cos(k1 y) restricted to the diagonal is cos(k1 t) sin(k2 t): slot cs
        v.set_coeff(Region::upper(2), TrigMonomial{Assign::K21, Trig::Sin, Trig::Cos}, Rat(1));
        REQUIRE(diag_value(v, 2, Side::Upper) == make_trace(Rat(0), Rat(1), Rat(0), Rat(0)));
    }
}

TEST_CASE("the transversal half-derivative of elementary monomials") {
    const Params p = params_n(3);
    const Rat k1 = p.k1, k2 = p.k2;
    const auto half_derivative = [&](const TrigMonomial& m) {
        Wave w(p);
        w.set_coeff(Region::lower(1), m, Rat(1));
        return diag_deriv_half(w, 1, Side::Lower);
    };
    // (d/dx - d/dy)/2 of sin(k1 x) cos(k2 y) on the diagonal:
    //   (k1 cos cos + k2 sin sin)/2
    REQUIRE(half_derivative(TrigMonomial{Assign::K12, Trig::Sin, Trig::Cos}) ==
            make_trace(k1 / 2, Rat(0), Rat(0), k2 / 2));
    // ... of cos(k2 x) sin(k1 y): -(k1 cos cos + k2 sin sin)/2
    REQUIRE(half_derivative(TrigMonomial{Assign::K21, Trig::Cos, Trig::Sin}) ==
            make_trace(-k1 / 2, Rat(0), Rat(0), -k2 / 2));
    // ... of sin(k1 x) sin(k2 y): (k1 cos sin - k2 sin cos)/2
    REQUIRE(half_derivative(TrigMonomial{Assign::K12, Trig::Sin, Trig::Sin}) ==
            make_trace(Rat(0), k1 / 2, -k2 / 2, Rat(0)));
    // ... of sin(k2 x) sin(k1 y): (k2 cos sin - k1 sin cos)/2 read in (k1, k2) slots
    REQUIRE(half_derivative(TrigMonomial{Assign::K21, Trig::Sin, Trig::Sin}) ==
            make_trace(Rat(0), -k1 / 2, k2 / 2, Rat(0)));
}

TEST_CASE("jump vanishes exactly for smooth continuations") {
    const Params p = params_n(3);
    std::mt19937 rng(314);
    for (int trial = 0; trial < 10; ++trial) {
        Wave w(p);
        for (const TrigMonomial& m : all_monomials()) {
            const Rat q = testutil::random_rational(rng);
            w.set_coeff(Region::lower(2), m, q);
            w.set_coeff(Region::upper(2), m, q);
        }
        REQUIRE(diag_jump(w, 2) == zero_trace);
    }
}

TEST_CASE("defects of the named non-smooth combinations match the closed forms") {
    for (int n = 2; n <= 6; ++n) {
        const Params p = params_n(n);
        const Rat k1 = p.k1, k2 = p.k2, c = p.c;

        const Wave cs4 = phi_wave(p, n, 0, Assign::K12) + phi_wave(p, 0, n, Assign::K21);
        const Wave cs6 = phi_wave(p, n, 0, Assign::K21) + phi_wave(p, 0, n, Assign::K12);
        for (int e = 1; e <= n; ++e) {
            REQUIRE(defect(cs4, e) == make_trace(-Rat(n) * k1 / c, Rat(0), Rat(n - 2), -Rat(n) * k2 / c));
            REQUIRE(defect(cs6, e) == make_trace(-Rat(n) * k2 / c, Rat(n - 2), Rat(0), -Rat(n) * k1 / c));

            // the same values as -n/2 times the reference expressions
            const DiagTrace ref4 = make_trace(2 * k1 / c, Rat(0), 2 * (Rat(2) / n - 1), 2 * k2 / c);
            const DiagTrace ref6 = make_trace(2 * k2 / c, 2 * (Rat(2) / n - 1), Rat(0), 2 * k1 / c);
            for (std::size_t s = 0; s < 4; ++s) {
                REQUIRE(defect(cs4, e)[s] == Rat(-n) / 2 * ref4[s]);
                REQUIRE(defect(cs6, e)[s] == Rat(-n) / 2 * ref6[s]);
            }
        }

        for (int i = 1; i <= n - 1; ++i) {
            const Wave cs2 = psi_wave(p, i, Assign::K12) - psi_wave(p, i, Assign::K21);
            for (int e = 1; e <= n; ++e) {
                const Rat sigma = Rat((e == i) - (e == i + 1));
                REQUIRE(defect(cs2, e) ==
                        make_trace(Rat(0), 2 * Rat(n) * sigma * k1 / c, -2 * Rat(n) * sigma * k2 / c, Rat(0)));
            }
        }
    }
}

TEST_CASE("defect of a smooth wave is minus its diagonal value") {
    const Params p = params_n(3);
    std::mt19937 rng(2718);
    const WaveList cb = subbasis(p, SubbasisKind::CBas);
    for (int trial = 0; trial < 10; ++trial) {
        Wave w(p);
        for (const Wave& g : cb.members) w += testutil::random_rational(rng) * g;
        for (int e = 1; e <= 3; ++e) {
            const DiagTrace value = diag_value(w, e, Side::Lower);
            const DiagTrace d = defect(w, e);
            for (std::size_t s = 0; s < 4; ++s) REQUIRE(d[s] == -value[s]);
        }
    }
}

TEST_CASE("defect refuses diagonally discontinuous input") {
    const Params p = params_n(3);
    const Wave w = phi_wave(p, 0, 3, Assign::K12);
    try {
        defect(w, 1);
        FAIL("expected DiscontinuityError");
    } catch (const DiscontinuityError& e) {
        REQUIRE(e.edges == std::vector<int>{1, 2, 3});
        REQUIRE(std::string(e.what()).find("discontinuous") != std::string::npos);
    }
}

TEST_CASE("interaction condition reports") {
    const Params p = params_n(3);
    SECTION("a smooth state with diagonal support fails with residual -c * value") {
        const Wave w = phi_wave(p, 0, 0, Assign::K12);
        const DbcReport report = dbc_residual(w);
        REQUIRE(report.continuity_ok);
        REQUIRE_FALSE(report.passed);
        for (const auto& item : report.edges) {
            REQUIRE(item.continuity == zero_trace);
            REQUIRE(item.residual == make_trace(-p.c, Rat(0), Rat(0), Rat(0)));
        }
    }
    SECTION("a lone non-smooth product is flagged as discontinuous") {
        const DbcReport report = dbc_residual(phi_wave(p, 0, 3, Assign::K12));
        REQUIRE_FALSE(report.continuity_ok);
        REQUIRE_FALSE(report.passed);
    }
}

TEST_CASE("vertex conditions hold for every generator by construction") {
    for (int n = 2; n <= 5; ++n) {
        const Params p = params_n(n);
        for (const Wave& w : redundant_generators(p).members) {
            const VertexReport report = vertex_residuals(w);
            REQUIRE(report.passed);
            REQUIRE(report.items.size() == static_cast<std::size_t>(2 * n * n));
        }
    }
}

TEST_CASE("vertex conditions detect violations") {
    const Params p = params_n(3);
    Wave w(p);
    w.set_coeff(Region::off(1, 2), parse_monomial("sc12"), Rat(1));
    const VertexReport report = vertex_residuals(w);
    REQUIRE_FALSE(report.passed);
    bool kirchhoff_x_failed = false, continuity_y_failed = false;
    for (const auto& item : report.items) {
        if (item.condition == "kirchhoff-x" && item.fixed_edge == 2) {
            // only quadrant Q_12 contributes: sum of derivatives is k1 cos(k2 t)
            REQUIRE(item.coeffs == make_trace(Rat(0), Rat(0), p.k1, Rat(0)));
            kirchhoff_x_failed = !item.passed;
        }
        if (item.condition == "vertex-continuity-y" && item.fixed_edge == 1 && item.other_edge == 2) {
            // Q_12 at y = 0 carries sin(k1 x), the reference quadrant Q_11 nothing
            REQUIRE(item.coeffs == make_trace(Rat(0), Rat(1), Rat(0), Rat(0)));
            continuity_y_failed = !item.passed;
        }
    }
    REQUIRE(kirchhoff_x_failed);
    REQUIRE(continuity_y_failed);
}

TEST_CASE("residual maps are linear") {
    const Params p = params_n(3);
    std::mt19937 rng(1618);
    for (int trial = 0; trial < 8; ++trial) {
        const Wave a = testutil::random_wave(rng, p);
        const Wave b = testutil::random_wave(rng, p);
        const Rat q = testutil::random_rational(rng);
        const Wave combo = a + q * b;

        const DbcReport ra = dbc_residual(a), rb = dbc_residual(b), rc = dbc_residual(combo);
        for (std::size_t e = 0; e < 3; ++e)
            for (std::size_t s = 0; s < 4; ++s) {
                REQUIRE(rc.edges[e].residual[s] == ra.edges[e].residual[s] + q * rb.edges[e].residual[s]);
                REQUIRE(rc.edges[e].continuity[s] == ra.edges[e].continuity[s] + q * rb.edges[e].continuity[s]);
            }

        const VertexReport va = vertex_residuals(a), vb = vertex_residuals(b), vc = vertex_residuals(combo);
        for (std::size_t i = 0; i < va.items.size(); ++i)
            for (std::size_t s = 0; s < 4; ++s)
                REQUIRE(vc.items[i].coeffs[s] == va.items[i].coeffs[s] + q * vb.items[i].coeffs[s]);
    }
}

TEST_CASE("zero defect on every edge is exactly the interaction condition") {
    const Params p = params_n(3);
    std::mt19937 rng(55);
    const WaveList gens = generators(p);
    int continuous_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Wave w(p);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1);
        for (int t = 0; t < 5; ++t)
            w += testutil::random_rational(rng) * gens.members[static_cast<std::size_t>(pick(rng))];
        const DbcReport report = dbc_residual(w);
        if (!report.continuity_ok) {
            REQUIRE_THROWS_AS(defect(w, 1), DiscontinuityError);
            continue;
        }
        ++continuous_seen;
        bool all_zero = true;
        for (const DiagTrace& d : defect_all(w))
            if (!trace_is_zero(d)) all_zero = false;
        REQUIRE(report.passed == all_zero);
    }
    REQUIRE(continuous_seen > 0);  // smooth-only draws do occur
}
