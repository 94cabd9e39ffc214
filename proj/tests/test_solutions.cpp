#include <stargraph/solutions.hpp>

#include "oracle_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace stargraph;

namespace {
Params params_n(int n) { return Params(n, Rat(3) / 2, Rat(5) / 7, Rat(2)); }
Params alt_params_n(int n) { return Params(n, Rat(7) / 3, Rat(1) / 2, Rat(-5) / 4); }
}  // namespace

TEST_CASE("family counts follow the closed forms") {
    for (int n = 2; n <= 8; ++n) {
        const Params p = params_n(n);
        const std::size_t off = family_off_diagonal(p).size();
        const std::size_t anti = family_antisymmetric(p).size();
        const std::size_t nonsmooth = family_nonsmooth(p).size();
        if (n >= 3) {
            REQUIRE(off == static_cast<std::size_t>(2 * n * n - 6 * n + 2));
            REQUIRE(anti == static_cast<std::size_t>(3 * n - 1));
        } else {
            REQUIRE(off == 0);
            REQUIRE(anti == 4);
        }
        REQUIRE(nonsmooth == static_cast<std::size_t>(n - 1));
    }
    // spot values: n = 3 -> 2, n = 4 -> 10, n = 5 -> 22 off-diagonal members
    REQUIRE(family_off_diagonal(params_n(3)).size() == 2);
    REQUIRE(family_off_diagonal(params_n(4)).size() == 10);
    REQUIRE(family_off_diagonal(params_n(5)).size() == 22);
}

TEST_CASE("every family member is an exact eigensolution under both parameter sets") {
    for (int n = 2; n <= 5; ++n)
        for (const Params& p : {params_n(n), alt_params_n(n)})
            for (const Family& family : all_families(p))
                for (const Wave& w : family.list.members) REQUIRE(is_eigensolution(w));
}

TEST_CASE("the off-diagonal family avoids the diagonal quadrants") {
    for (int n = 3; n <= 5; ++n)
        for (const Wave& w : family_off_diagonal(params_n(n)).members)
            for (const auto& [region, coeffs] : w.regions()) REQUIRE(region.kind == RegionKind::Off);
}

TEST_CASE("the antisymmetric family vanishes on the diagonal itself") {
    for (const Wave& w : family_antisymmetric(params_n(3)).members)
        for (int e = 1; e <= 3; ++e) {
            REQUIRE(trace_is_zero(diag_value(w, e, Side::Lower)));
            REQUIRE(trace_is_zero(diag_value(w, e, Side::Upper)));
        }
}

TEST_CASE("the non-smooth family really jumps") {
    const int n = 3;
    const Params p = params_n(n);
    const WaveList family = family_nonsmooth(p);
    for (int i = 1; i <= n - 1; ++i) {
        const Wave& w = family.members[static_cast<std::size_t>(i - 1)];
        for (int e = 1; e <= n; ++e) {
            const Rat sigma = Rat((e == i) - (e == i + 1));
            const DiagTrace jump = diag_jump(w, e);
            // jump concentrated in the mixed slots, proportional to the
            // edge-difference pattern
            REQUIRE(jump[0] == 0);
            REQUIRE(jump[3] == 0);
            REQUIRE(jump[1] == 2 * Rat(n) * sigma * p.k1);
            REQUIRE(jump[2] == -2 * Rat(n) * sigma * p.k2);
        }
    }
}

TEST_CASE("only the non-smooth family depends on the coupling") {
    const int n = 3;
    const Params p = params_n(n);
    const Params doubled(n, p.k1, p.k2, p.c * 2);

    REQUIRE(coords_matrix(family_off_diagonal(p).members, p) ==
            coords_matrix(family_off_diagonal(doubled).members, doubled));
    REQUIRE(coords_matrix(family_antisymmetric(p).members, p) ==
            coords_matrix(family_antisymmetric(doubled).members, doubled));

    const WaveList at_c = family_nonsmooth(p);
    const WaveList at_2c = family_nonsmooth(doubled);
    for (int i = 0; i < n - 1; ++i) {
        const Wave cs2 = psi_wave(p, i + 1, Assign::K12) - psi_wave(p, i + 1, Assign::K21);
        const auto lhs = to_coords(at_c.members[static_cast<std::size_t>(i)] - cs2);
        const Wave cs2_doubled = psi_wave(doubled, i + 1, Assign::K12) - psi_wave(doubled, i + 1, Assign::K21);
        const auto rhs = to_coords(at_2c.members[static_cast<std::size_t>(i)] - cs2_doubled);
        // halving the coupling doubles the smooth corrector
        for (std::size_t s = 0; s < lhs.size(); ++s) REQUIRE(lhs[s] == 2 * rhs[s]);
    }
}

TEST_CASE("constraint assembly has the advertised shape") {
    const int n = 3;
    const Params p = params_n(n);
    SECTION("over the full generator set") {
        const WaveList gens = generators(p);
        const RatMatrix m = assemble_constraints(p, gens.members);
        REQUIRE(m.rows == 8 * n);
        REQUIRE(m.cols == 2 * n * n + 2 * n + 2);
        REQUIRE(rank(m) == 14);
        REQUIRE(testutil::bareiss_rank(m) == 14);  // independent elimination
    }
    SECTION("over the redundant set") {
        const RatMatrix m = assemble_constraints(p, redundant_generators(p).members);
        REQUIRE(m.rows == 24);
        REQUIRE(m.cols == 32);
        REQUIRE(rank(m) == 14);
    }
    SECTION("columns of diagonal-avoiding generators vanish") {
        const RatMatrix m = assemble_constraints(p, family_off_diagonal(p).members);
        for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < m.cols; ++c) REQUIRE(m.at(r, c) == 0);
    }
    SECTION("mixed parameters are rejected") {
        std::vector<Wave> bad{Wave(params_n(4))};
        REQUIRE_THROWS_AS(assemble_constraints(p, bad), std::invalid_argument);
    }
}

TEST_CASE("enumeration nullities") {
    REQUIRE(enumerate_solutions(params_n(3)).nullity == 12);
    REQUIRE(enumerate_solutions(params_n(4)).nullity == 24);
    // below the generic range the count deviates from 2n^2 - 2n = 4: the
    // antisymmetric defect directions become completable
    REQUIRE(enumerate_solutions(params_n(2)).nullity == 7);
}

TEST_CASE("redundant bookkeeping at n = 3") {
    const RedundantReport report = redundant_bookkeeping(params_n(3));
    REQUIRE(report.rows == 24);
    REQUIRE(report.cols == 32);
    REQUIRE(report.generator_rank == 26);
    REQUIRE(report.constraint_rank == 14);
    REQUIRE(report.nullity == 18);
}

TEST_CASE("families exhaust the solution space for n >= 3") {
    for (int n = 3; n <= 5; ++n) {
        const CompletenessReport report = certify_completeness(params_n(n));
        REQUIRE(report.members_valid);
        REQUIRE(report.family_total == 2 * n * n - 2 * n);
        REQUIRE(report.family_rank == report.family_total);  // members independent
        REQUIRE(report.nullity == 2 * n * n - 2 * n);
        REQUIRE(report.span_equal);
    }
}

TEST_CASE("at n = 2 the families undercount the solution space") {
    const CompletenessReport report = certify_completeness(params_n(2));
    REQUIRE(report.members_valid);
    REQUIRE(report.family_total == 5);
    REQUIRE(report.nullity == 7);
    REQUIRE_FALSE(report.span_equal);
}

TEST_CASE("family members lie inside the enumerated span") {
    const Params p = params_n(4);
    const EnumerationResult enumeration = enumerate_solutions(p);
    const RrefResult enum_rref = rref(enumeration.member_coords);
    for (const Family& family : all_families(p))
        for (const Wave& w : family.list.members) REQUIRE(in_rowspace(to_coords(w), enum_rref));
}

TEST_CASE("changing the coupling moves the solution space") {
    const Params p = params_n(3);
    const Params doubled(3, p.k1, p.k2, p.c * 2);
    const EnumerationResult a = enumerate_solutions(p);
    const EnumerationResult b = enumerate_solutions(doubled);
    REQUIRE(a.nullity == b.nullity);
    // waves with different parameters live in the same coordinate space
    RatMatrix b_coords = b.member_coords;
    REQUIRE_FALSE(rowspace_equal(a.member_coords, b_coords));
    // and a non-smooth member at coupling c fails the condition at 2c
    const Wave moved = from_coords(to_coords(family_nonsmooth(p).members[0]), doubled);
    REQUIRE_FALSE(dbc_residual(moved).passed);
    REQUIRE(dbc_residual(moved).continuity_ok);
}

TEST_CASE("continuous non-smooth subspace has dimension n + 1 with the expected span") {
    for (int n = 2; n <= 6; ++n) {
        const ContinuousNonSmoothReport report = continuous_nonsmooth_subspace(params_n(n));
        REQUIRE(report.dim == n + 1);
        REQUIRE(report.expected_span);
        REQUIRE(report.expected.size() == static_cast<std::size_t>(n + 1));
        for (const Wave& w : report.expected.members) REQUIRE(dbc_residual(w).continuity_ok);
    }
}

TEST_CASE("defect-range analysis isolates the realizable non-smooth directions") {
    for (int n = 3; n <= 5; ++n) {
        const DefectRangeReport report = defect_range_analysis(params_n(n));
        REQUIRE(report.cs46_absent);
        REQUIRE(report.cs2_dim == n - 1);
        REQUIRE(report.family_in_kernel);
        // smooth generators with diagonal support: all 2n^2 minus the
        // 2(n-1)(n-2) products of two edge-difference states with
        // non-adjacent support... counted directly instead:
        REQUIRE(report.smooth_count > 0);
        REQUIRE(report.kernel_dim >= report.cs2_dim);
    }
    SECTION("the antisymmetric combinations become completable at n = 2") {
        const DefectRangeReport report = defect_range_analysis(params_n(2));
        REQUIRE(report.cs2_dim == 1);
        REQUIRE(report.cs46_dim == 2);
        REQUIRE_FALSE(report.cs46_absent);
    }
}
