#pragma once

#include "basis.hpp"
#include "conditions.hpp"
#include "linalg.hpp"
#include "wave.hpp"

#include <string>
#include <utility>
#include <vector>

namespace stargraph {

/// Family one: smooth solutions supported outside the diagonal quadrants,
/// built from the edge-local states phi^1..phi^{n-1}. Count 2n^2 - 6n + 2
/// for n >= 3 (empty at n = 2):
///   1. single products Phi[i,j]_a with |i - j| >= 2          (n >= 4),
///   2. row sums Phi[i,i-1] + Phi[i,i] + Phi[i,i+1] and their
///      column mirrors, both assignments, for 2 <= i <= n-2   (n >= 4),
///   3. the pair Phi[1,2]_a - Phi[2,1]_a                      (n >= 3).
inline WaveList family_off_diagonal(const Params& params) {
    const int n = params.n;
    WaveList out;
    for (int i = 1; i <= n - 3; ++i)
        for (int j = i + 2; j <= n - 1; ++j)
            for (const Assign a : {Assign::K12, Assign::K21})
                out.push(phi_wave(params, i, j, a), phi_name(i, j, a));
    for (int j = 1; j <= n - 3; ++j)
        for (int i = j + 2; i <= n - 1; ++i)
            for (const Assign a : {Assign::K12, Assign::K21})
                out.push(phi_wave(params, i, j, a), phi_name(i, j, a));
    for (int i = 2; i <= n - 2; ++i) {
        for (const Assign a : {Assign::K12, Assign::K21})
            out.push(phi_wave(params, i, i - 1, a) + phi_wave(params, i, i, a) + phi_wave(params, i, i + 1, a),
                     phi_name(i, i - 1, a) + " + " + phi_name(i, i, a) + " + " + phi_name(i, i + 1, a));
        for (const Assign a : {Assign::K12, Assign::K21})
            out.push(phi_wave(params, i - 1, i, a) + phi_wave(params, i, i, a) + phi_wave(params, i + 1, i, a),
                     phi_name(i - 1, i, a) + " + " + phi_name(i, i, a) + " + " + phi_name(i + 1, i, a));
    }
    if (n >= 3)
        for (const Assign a : {Assign::K12, Assign::K21})
            out.push(phi_wave(params, 1, 2, a) - phi_wave(params, 2, 1, a),
                     phi_name(1, 2, a) + " - " + phi_name(2, 1, a));
    return out;
}

/// Family two: smooth solutions antisymmetric under swapping the momentum
/// assignment. Count 3n - 1 for n >= 3 and 4 at n = 2:
///   1. Phi[i,i]_12 - Phi[i,i]_21 for 0 <= i <= n-1,
///   2. Phi[0,i]_12 - Phi[i,0]_21 and Phi[0,i]_21 - Phi[i,0]_12
///      for 1 <= i <= n-1,
///   3. Phi[1,2]_12 + Phi[2,1]_12 - Phi[1,2]_21 - Phi[2,1]_21  (n >= 3).
inline WaveList family_antisymmetric(const Params& params) {
    const int n = params.n;
    WaveList out;
    for (int i = 0; i <= n - 1; ++i)
        out.push(phi_wave(params, i, i, Assign::K12) - phi_wave(params, i, i, Assign::K21),
                 phi_name(i, i, Assign::K12) + " - " + phi_name(i, i, Assign::K21));
    for (int i = 1; i <= n - 1; ++i) {
        out.push(phi_wave(params, 0, i, Assign::K12) - phi_wave(params, i, 0, Assign::K21),
                 phi_name(0, i, Assign::K12) + " - " + phi_name(i, 0, Assign::K21));
        out.push(phi_wave(params, 0, i, Assign::K21) - phi_wave(params, i, 0, Assign::K12),
                 phi_name(0, i, Assign::K21) + " - " + phi_name(i, 0, Assign::K12));
    }
    if (n >= 3)
        out.push(phi_wave(params, 1, 2, Assign::K12) + phi_wave(params, 2, 1, Assign::K12) -
                     phi_wave(params, 1, 2, Assign::K21) - phi_wave(params, 2, 1, Assign::K21),
                 phi_name(1, 2, Assign::K12) + " + " + phi_name(2, 1, Assign::K12) + " - " +
                     phi_name(1, 2, Assign::K21) + " - " + phi_name(2, 1, Assign::K21));
    return out;
}

/// Family three: the n - 1 solutions with genuinely discontinuous transversal
/// derivative on the diagonal, mixing the continuous non-smooth combinations
/// with smooth correctors weighted by the momenta over the coupling:
///   Psi[i]_12 - Psi[i]_21 + (n k1/c)(Phi[0,i]_12 + Phi[i,0]_21)
///                         - (n k2/c)(Phi[0,i]_21 + Phi[i,0]_12).
inline WaveList family_nonsmooth(const Params& params) {
    const int n = params.n;
    const Rat a1 = Rat(n) * params.k1 / params.c;
    const Rat a2 = Rat(n) * params.k2 / params.c;
    WaveList out;
    for (int i = 1; i <= n - 1; ++i) {
        Wave w = psi_wave(params, i, Assign::K12) - psi_wave(params, i, Assign::K21);
        w += a1 * (phi_wave(params, 0, i, Assign::K12) + phi_wave(params, i, 0, Assign::K21));
        w -= a2 * (phi_wave(params, 0, i, Assign::K21) + phi_wave(params, i, 0, Assign::K12));
        out.push(std::move(w), psi_name(i, Assign::K12) + " - " + psi_name(i, Assign::K21) + " + (n k1/c)(" +
                                   phi_name(0, i, Assign::K12) + " + " + phi_name(i, 0, Assign::K21) +
                                   ") - (n k2/c)(" + phi_name(0, i, Assign::K21) + " + " + phi_name(i, 0, Assign::K12) +
                                   ")");
    }
    return out;
}

struct Family {
    std::string label;
    WaveList list;
};

inline std::vector<Family> all_families(const Params& params) {
    return {{"off-diagonal-support", family_off_diagonal(params)},
            {"momentum-antisymmetric", family_antisymmetric(params)},
            {"non-smooth", family_nonsmooth(params)}};
}

/// Linear constraint system over a generator list: per edge four diagonal
/// continuity rows (upper value minus lower value) and four interaction rows
/// (jump minus c times the mean value), each expanded over the diagonal
/// trace slots. 8n rows, one column per generator; the kernel is exactly the
/// set of coefficient vectors producing eigensolutions, since every
/// generator already satisfies the vertex conditions.
inline RatMatrix assemble_constraints(const Params& params, const std::vector<Wave>& gens) {
    const int n = params.n;
    RatMatrix m(8 * n, static_cast<int>(gens.size()));
    for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
        const Wave& w = gens[static_cast<std::size_t>(g)];
        if (!(w.params() == params)) throw std::invalid_argument("generator parameter mismatch");
        for (int e = 1; e <= n; ++e) {
            const DiagTrace lower = diag_value(w, e, Side::Lower);
            const DiagTrace upper = diag_value(w, e, Side::Upper);
            const DiagTrace jump = diag_jump(w, e);
            for (int s = 0; s < 4; ++s) {
                m.at(8 * (e - 1) + s, g) = upper[static_cast<std::size_t>(s)] - lower[static_cast<std::size_t>(s)];
                m.at(8 * (e - 1) + 4 + s, g) =
                    jump[static_cast<std::size_t>(s)] -
                    params.c * (upper[static_cast<std::size_t>(s)] + lower[static_cast<std::size_t>(s)]) / 2;
            }
        }
    }
    return m;
}

/// Exhaustive enumeration over the full generator set: kernel of the
/// constraint system, one solution per kernel basis vector.
struct EnumerationResult {
    WaveList generators_used;
    RatMatrix constraints;  // 8n x (2n^2 + 2n + 2)
    RatMatrix kernel;       // nullity x generator count
    int nullity = 0;
    std::vector<Wave> members;
    RatMatrix member_coords;  // nullity x 8n(n+1)
};

inline EnumerationResult enumerate_solutions(const Params& params) {
    EnumerationResult result;
    result.generators_used = generators(params);
    result.constraints = assemble_constraints(params, result.generators_used.members);
    result.kernel = nullspace(result.constraints);
    result.nullity = result.kernel.rows;
    for (int r = 0; r < result.kernel.rows; ++r) {
        Wave w(params);
        for (int g = 0; g < result.kernel.cols; ++g)
            if (result.kernel.at(r, g) != 0)
                w += result.kernel.at(r, g) * result.generators_used.members[static_cast<std::size_t>(g)];
        if (!is_eigensolution(w)) throw std::logic_error("enumerated kernel member fails a condition");
        result.members.push_back(std::move(w));
    }
    result.member_coords = coords_matrix(result.members, params);
    return result;
}

/// The same system assembled over the redundant generator set of all
/// products, n+1 states per particle at both assignments.
struct RedundantReport {
    int rows = 0, cols = 0;
    int generator_rank = 0;   // rank of the generating set itself
    int constraint_rank = 0;  // rank of the constraint system over it
    int nullity = 0;
};

inline RedundantReport redundant_bookkeeping(const Params& params) {
    const WaveList gens = redundant_generators(params);
    const RatMatrix m = assemble_constraints(params, gens.members);
    RedundantReport report;
    report.rows = m.rows;
    report.cols = m.cols;
    report.generator_rank = rank(coords_matrix(gens.members, params));
    report.constraint_rank = rank(m);
    report.nullity = m.cols - report.constraint_rank;
    return report;
}

/// Cross-check of the three families against the exhaustive enumeration.
struct CompletenessReport {
    int count_off_diagonal = 0;
    int count_antisymmetric = 0;
    int count_nonsmooth = 0;
    int family_total = 0;
    int family_rank = 0;  // rank of the union of the three families
    int nullity = 0;      // kernel dimension of the enumeration
    bool members_valid = false;  // every family member passes all conditions
    bool span_equal = false;     // family span == enumerated span
};

inline CompletenessReport certify_completeness(const Params& params) {
    CompletenessReport report;
    const std::vector<Family> fams = all_families(params);
    report.count_off_diagonal = static_cast<int>(fams[0].list.size());
    report.count_antisymmetric = static_cast<int>(fams[1].list.size());
    report.count_nonsmooth = static_cast<int>(fams[2].list.size());
    report.family_total = report.count_off_diagonal + report.count_antisymmetric + report.count_nonsmooth;

    std::vector<Wave> all;
    report.members_valid = true;
    for (const Family& f : fams)
        for (const Wave& w : f.list.members) {
            if (!is_eigensolution(w)) report.members_valid = false;
            all.push_back(w);
        }
    const RatMatrix family_coords = coords_matrix(all, params);
    report.family_rank = rank(family_coords);

    const EnumerationResult enumeration = enumerate_solutions(params);
    report.nullity = enumeration.nullity;
    report.span_equal = rowspace_equal(family_coords, enumeration.member_coords);
    return report;
}

/// The diagonally continuous part of the non-smooth generator set: kernel of
/// the continuity rows over DBas. For every n the space is spanned by the
/// n + 1 combinations
///   Psi[i]_12 - Psi[i]_21,
///   Phi[n,0]_12 + Phi[0,n]_21,
///   Phi[n,0]_21 + Phi[0,n]_12.
struct ContinuousNonSmoothReport {
    int dim = 0;
    RatMatrix kernel;        // dim x (2n + 2), coefficients over DBas
    bool expected_span = false;  // kernel row space matches the span above
    WaveList expected;           // the named combinations themselves
};

inline ContinuousNonSmoothReport continuous_nonsmooth_subspace(const Params& params) {
    const int n = params.n;
    const WaveList db = subbasis(params, SubbasisKind::DBas);
    RatMatrix continuity(4 * n, static_cast<int>(db.size()));
    for (int g = 0; g < static_cast<int>(db.size()); ++g) {
        const Wave& w = db.members[static_cast<std::size_t>(g)];
        for (int e = 1; e <= n; ++e) {
            const DiagTrace lower = diag_value(w, e, Side::Lower);
            const DiagTrace upper = diag_value(w, e, Side::Upper);
            for (int s = 0; s < 4; ++s)
                continuity.at(4 * (e - 1) + s, g) =
                    upper[static_cast<std::size_t>(s)] - lower[static_cast<std::size_t>(s)];
        }
    }
    ContinuousNonSmoothReport report;
    report.kernel = nullspace(continuity);
    report.dim = report.kernel.rows;

    // Expected combinations expressed in DBas coordinates. DBas order:
    // Psi[i]_12, Psi[i]_21 for i = 1..n-1, then Phi[0,n]_12, Phi[0,n]_21,
    // Phi[n,0]_12, Phi[n,0]_21.
    const int base = 2 * (n - 1);
    RatMatrix expected_coeffs(n + 1, static_cast<int>(db.size()));
    for (int i = 1; i <= n - 1; ++i) {
        expected_coeffs.at(i - 1, 2 * (i - 1)) = 1;
        expected_coeffs.at(i - 1, 2 * (i - 1) + 1) = -1;
        report.expected.push(psi_wave(params, i, Assign::K12) - psi_wave(params, i, Assign::K21),
                             psi_name(i, Assign::K12) + " - " + psi_name(i, Assign::K21));
    }
    expected_coeffs.at(n - 1, base + 2) = 1;
    expected_coeffs.at(n - 1, base + 1) = 1;
    report.expected.push(phi_wave(params, n, 0, Assign::K12) + phi_wave(params, 0, n, Assign::K21),
                         phi_name(n, 0, Assign::K12) + " + " + phi_name(0, n, Assign::K21));
    expected_coeffs.at(n, base + 3) = 1;
    expected_coeffs.at(n, base + 0) = 1;
    report.expected.push(phi_wave(params, n, 0, Assign::K21) + phi_wave(params, 0, n, Assign::K12),
                         phi_name(n, 0, Assign::K21) + " + " + phi_name(0, n, Assign::K12));

    report.expected_span = rowspace_equal(report.kernel, expected_coeffs);
    return report;
}

/// Defect-range analysis behind the completeness argument. Domain: smooth
/// generators with support on the diagonal quadrants, together with the
/// n + 1 continuous non-smooth combinations. The kernel of the joint defect
/// map gives every way of producing an eigensolution involving non-smooth
/// material; the analysis certifies that the two antisymmetric combinations
/// Phi[n,0]_12 + Phi[0,n]_21 and Phi[n,0]_21 + Phi[0,n]_12 never appear
/// (their defects are not cancellable) and that the Psi combinations enter
/// in exactly the n - 1 ways realized by the non-smooth family.
struct DefectRangeReport {
    int smooth_count = 0;    // smooth generators with diagonal support
    int kernel_dim = 0;      // dimension of the joint defect kernel
    int cs2_dim = 0;         // rank of the Psi-combination block of the kernel
    int cs46_dim = 0;        // rank of the Phi[n,0]/Phi[0,n] block
    bool cs46_absent = false;
    bool family_in_kernel = false;  // the non-smooth family's coefficient
                                    // vectors all lie in the kernel
};

inline DefectRangeReport defect_range_analysis(const Params& params) {
    const int n = params.n;
    const WaveList cb = subbasis(params, SubbasisKind::CBas);

    // Smooth generators that actually touch the diagonal (the rest have
    // identically zero defect and only pad the kernel).
    std::vector<Wave> smooth;
    std::vector<std::string> smooth_names;
    for (std::size_t g = 0; g < cb.size(); ++g) {
        bool diagonal_support = false;
        for (const auto& [region, coeffs] : cb.members[g].regions())
            if (region.kind != RegionKind::Off) diagonal_support = true;
        if (diagonal_support) {
            smooth.push_back(cb.members[g]);
            smooth_names.push_back(cb.names[g]);
        }
    }

    ContinuousNonSmoothReport continuous = continuous_nonsmooth_subspace(params);
    const std::vector<Wave>& tail = continuous.expected.members;  // n-1 Psi combos, then the two Phi combos

    const int cols = static_cast<int>(smooth.size() + tail.size());
    RatMatrix defects(4 * n, cols);
    const auto fill = [&](int col, const Wave& w) {
        const std::vector<DiagTrace> d = defect_all(w);
        for (int e = 1; e <= n; ++e)
            for (int s = 0; s < 4; ++s)
                defects.at(4 * (e - 1) + s, col) = d[static_cast<std::size_t>(e - 1)][static_cast<std::size_t>(s)];
    };
    for (std::size_t g = 0; g < smooth.size(); ++g) fill(static_cast<int>(g), smooth[g]);
    for (std::size_t t = 0; t < tail.size(); ++t) fill(static_cast<int>(smooth.size() + t), tail[t]);

    DefectRangeReport report;
    report.smooth_count = static_cast<int>(smooth.size());
    const RatMatrix kernel = nullspace(defects);
    report.kernel_dim = kernel.rows;

    const int psi_base = static_cast<int>(smooth.size());
    const int psi_count = n - 1;
    RatMatrix psi_block(kernel.rows, psi_count);
    RatMatrix phi_block(kernel.rows, 2);
    for (int r = 0; r < kernel.rows; ++r) {
        for (int t = 0; t < psi_count; ++t) psi_block.at(r, t) = kernel.at(r, psi_base + t);
        for (int t = 0; t < 2; ++t) phi_block.at(r, t) = kernel.at(r, psi_base + psi_count + t);
    }
    report.cs2_dim = rank(psi_block);
    report.cs46_dim = rank(phi_block);
    report.cs46_absent = report.cs46_dim == 0;

    // The non-smooth family in domain coordinates: coefficient 1 on the i-th
    // Psi combination plus the momentum-weighted smooth correctors. Kernel
    // membership is checked through the map itself: A v == 0.
    report.family_in_kernel = true;
    const Rat a1 = Rat(n) * params.k1 / params.c;
    const Rat a2 = Rat(n) * params.k2 / params.c;
    const auto smooth_index = [&](const std::string& name) {
        for (std::size_t g = 0; g < smooth_names.size(); ++g)
            if (smooth_names[g] == name) return static_cast<int>(g);
        throw std::logic_error("smooth generator not found: " + name);
    };
    for (int i = 1; i <= n - 1; ++i) {
        std::vector<Rat> v(static_cast<std::size_t>(cols), Rat(0));
        v[static_cast<std::size_t>(psi_base + i - 1)] = 1;
        v[static_cast<std::size_t>(smooth_index(phi_name(0, i, Assign::K12)))] += a1;
        v[static_cast<std::size_t>(smooth_index(phi_name(i, 0, Assign::K21)))] += a1;
        v[static_cast<std::size_t>(smooth_index(phi_name(0, i, Assign::K21)))] -= a2;
        v[static_cast<std::size_t>(smooth_index(phi_name(i, 0, Assign::K12)))] -= a2;
        if (!is_zero_vector(mat_vec(defects, v))) report.family_in_kernel = false;
    }
    return report;
}

}  // namespace stargraph
