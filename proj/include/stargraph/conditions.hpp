#pragma once

#include "wave.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace stargraph {

/// Trace of a wave restricted to a diagonal ray x = y = t, expanded over the
/// four products of cos/sin at the two momenta. Slot order: cc, cs, sc, ss,
/// where the FIRST letter is the factor carrying k1 and the second the
/// factor carrying k2; e.g. slot sc holds the coefficient of
/// sin(k1 t) cos(k2 t).
using DiagTrace = std::array<Rat, 4>;

inline const char* diag_slot_label(int s) {
    static const char* labels[4] = {"cc", "cs", "sc", "ss"};
    return labels[s];
}

/// Which side of the diagonal cut inside a quadrant Q_ii.
enum class Side { Lower, Upper };

namespace detail {

inline int diag_slot(const TrigMonomial& m) {
    const int xbit = m.x == Trig::Sin ? 1 : 0;
    const int ybit = m.y == Trig::Sin ? 1 : 0;
    // Under K12 the x factor carries k1; under K21 the two factors swap
    // places in the (k1, k2) slot order.
    return m.assign == Assign::K12 ? xbit * 2 + ybit : ybit * 2 + xbit;
}

inline Trig flip(Trig t) { return t == Trig::Cos ? Trig::Sin : Trig::Cos; }

inline Region side_region(int edge, Side side) {
    return side == Side::Lower ? Region::lower(edge) : Region::upper(edge);
}

}  // namespace detail

/// Boundary value of the wave on the chosen side of the diagonal in Q_ii.
inline DiagTrace diag_value(const Wave& w, int edge, Side side) {
    DiagTrace out{Rat(0), Rat(0), Rat(0), Rat(0)};
    const auto it = w.regions().find(detail::side_region(edge, side));
    if (it == w.regions().end()) return out;
    for (const TrigMonomial& m : all_monomials()) {
        const Rat& q = it->second[static_cast<std::size_t>(monomial_index(m))];
        if (q != 0) out[static_cast<std::size_t>(detail::diag_slot(m))] += q;
    }
    return out;
}

/// One-sided trace of the transversal half-derivative (d/dx - d/dy)/2 on the
/// diagonal. Differentiating cos(k s) pulls down -k sin, differentiating
/// sin(k s) pulls down +k cos; each term lands in the slot with the
/// differentiated factor flipped.
inline DiagTrace diag_deriv_half(const Wave& w, int edge, Side side) {
    DiagTrace out{Rat(0), Rat(0), Rat(0), Rat(0)};
    const auto it = w.regions().find(detail::side_region(edge, side));
    if (it == w.regions().end()) return out;
    const Params& p = w.params();
    for (const TrigMonomial& m : all_monomials()) {
        const Rat& q = it->second[static_cast<std::size_t>(monomial_index(m))];
        if (q == 0) continue;
        const Rat& kx = m.assign == Assign::K12 ? p.k1 : p.k2;
        const Rat& ky = m.assign == Assign::K12 ? p.k2 : p.k1;
        const TrigMonomial dx{m.assign, detail::flip(m.x), m.y};
        const Rat sign_x = m.x == Trig::Cos ? Rat(-1) : Rat(1);
        out[static_cast<std::size_t>(detail::diag_slot(dx))] += q * kx * sign_x / 2;
        const TrigMonomial dy{m.assign, m.x, detail::flip(m.y)};
        const Rat sign_y = m.y == Trig::Cos ? Rat(-1) : Rat(1);
        out[static_cast<std::size_t>(detail::diag_slot(dy))] -= q * ky * sign_y / 2;
    }
    return out;
}

/// Jump of the transversal half-derivative across the diagonal in Q_ii,
/// oriented Upper side minus Lower side.
inline DiagTrace diag_jump(const Wave& w, int edge) {
    DiagTrace upper = diag_deriv_half(w, edge, Side::Upper);
    const DiagTrace lower = diag_deriv_half(w, edge, Side::Lower);
    for (std::size_t s = 0; s < 4; ++s) upper[s] -= lower[s];
    return upper;
}

inline bool trace_is_zero(const DiagTrace& t) {
    for (const auto& q : t)
        if (q != 0) return false;
    return true;
}

/// Per-edge report of the diagonal interaction condition jump = c * value.
/// The value on the diagonal is taken as the mean of the two one-sided
/// boundary values; this is linear, coincides with the common value on
/// continuous waves, and together with the continuity residual cuts out the
/// same solution set as either one-sided convention.
struct DbcReport {
    struct EdgeItem {
        int edge = 0;
        DiagTrace continuity{};  // upper value minus lower value
        DiagTrace residual{};    // jump minus c * mean value
    };
    std::vector<EdgeItem> edges;
    bool continuity_ok = false;
    bool passed = false;
};

inline DbcReport dbc_residual(const Wave& w) {
    DbcReport report;
    report.continuity_ok = true;
    report.passed = true;
    for (int e = 1; e <= w.params().n; ++e) {
        DbcReport::EdgeItem item;
        item.edge = e;
        const DiagTrace lower = diag_value(w, e, Side::Lower);
        const DiagTrace upper = diag_value(w, e, Side::Upper);
        const DiagTrace jump = diag_jump(w, e);
        for (std::size_t s = 0; s < 4; ++s) {
            item.continuity[s] = upper[s] - lower[s];
            item.residual[s] = jump[s] - w.params().c * (upper[s] + lower[s]) / 2;
        }
        if (!trace_is_zero(item.continuity)) {
            report.continuity_ok = false;
            report.passed = false;
        }
        if (!trace_is_zero(item.residual)) report.passed = false;
        report.edges.push_back(std::move(item));
    }
    return report;
}

/// Raised when a defect is requested for a wave that is discontinuous
/// across the diagonal; carries the offending edges.
struct DiscontinuityError : std::domain_error {
    std::vector<int> edges;

    explicit DiscontinuityError(std::vector<int> edges_)
        : std::domain_error(make_message(edges_)), edges(std::move(edges_)) {}

private:
    static std::string make_message(const std::vector<int>& edges_) {
        std::string msg = "wave is discontinuous across the diagonal on edge";
        if (edges_.size() > 1) msg += 's';
        for (const int e : edges_) msg += ' ' + std::to_string(e);
        return msg;
    }
};

/// Defect of a diagonally continuous wave on edge i: (1/c) * jump - value.
/// A wave solves the interaction condition exactly when its defect vanishes.
inline DiagTrace defect(const Wave& w, int edge) {
    std::vector<int> bad;
    for (int e = 1; e <= w.params().n; ++e)
        if (diag_value(w, e, Side::Lower) != diag_value(w, e, Side::Upper)) bad.push_back(e);
    if (!bad.empty()) throw DiscontinuityError(std::move(bad));
    const DiagTrace value = diag_value(w, edge, Side::Lower);
    DiagTrace out = diag_jump(w, edge);
    for (std::size_t s = 0; s < 4; ++s) out[s] = out[s] / w.params().c - value[s];
    return out;
}

inline std::vector<DiagTrace> defect_all(const Wave& w) {
    std::vector<DiagTrace> out;
    for (int e = 1; e <= w.params().n; ++e) out.push_back(defect(w, e));
    return out;
}

/// Trace of a wave at the vertex, expanded over the four profiles in the
/// free coordinate t: slot order cos(k1 t), sin(k1 t), cos(k2 t), sin(k2 t).
using VertexTrace = std::array<Rat, 4>;

inline const char* vertex_slot_label(int s) {
    static const char* labels[4] = {"cos_k1", "sin_k1", "cos_k2", "sin_k2"};
    return labels[s];
}

namespace detail {

// Boundary restriction of the Q_ij data to x_i = 0: a quadrant with i == j
// is represented by its Upper triangle there (x = 0 < y), off-diagonal
// quadrants by themselves.
inline Region x_boundary_region(int i, int j) { return i == j ? Region::upper(i) : Region::off(i, j); }
inline Region y_boundary_region(int i, int j) { return i == j ? Region::lower(i) : Region::off(i, j); }

}  // namespace detail

/// Value of the Q_ij data at x_i = 0 as a profile in y.
inline VertexTrace value_trace_x(const Wave& w, int i, int j) {
    VertexTrace out{Rat(0), Rat(0), Rat(0), Rat(0)};
    const auto it = w.regions().find(detail::x_boundary_region(i, j));
    if (it == w.regions().end()) return out;
    for (const TrigMonomial& m : all_monomials()) {
        if (m.x != Trig::Cos) continue;  // sin factors vanish at the vertex
        const Rat& q = it->second[static_cast<std::size_t>(monomial_index(m))];
        if (q == 0) continue;
        const int base = m.assign == Assign::K21 ? 0 : 2;  // y carries k1 under K21
        out[static_cast<std::size_t>(base + (m.y == Trig::Sin ? 1 : 0))] += q;
    }
    return out;
}

/// Normal derivative of the Q_ij data at x_i = 0 as a profile in y.
inline VertexTrace deriv_trace_x(const Wave& w, int i, int j) {
    VertexTrace out{Rat(0), Rat(0), Rat(0), Rat(0)};
    const auto it = w.regions().find(detail::x_boundary_region(i, j));
    if (it == w.regions().end()) return out;
    for (const TrigMonomial& m : all_monomials()) {
        if (m.x != Trig::Sin) continue;  // d/dx cos(kx x) vanishes at x = 0
        const Rat& q = it->second[static_cast<std::size_t>(monomial_index(m))];
        if (q == 0) continue;
        const Rat& kx = m.assign == Assign::K12 ? w.params().k1 : w.params().k2;
        const int base = m.assign == Assign::K21 ? 0 : 2;
        out[static_cast<std::size_t>(base + (m.y == Trig::Sin ? 1 : 0))] += q * kx;
    }
    return out;
}

/// Value of the Q_ij data at y_j = 0 as a profile in x.
inline VertexTrace value_trace_y(const Wave& w, int i, int j) {
    VertexTrace out{Rat(0), Rat(0), Rat(0), Rat(0)};
    const auto it = w.regions().find(detail::y_boundary_region(i, j));
    if (it == w.regions().end()) return out;
    for (const TrigMonomial& m : all_monomials()) {
        if (m.y != Trig::Cos) continue;
        const Rat& q = it->second[static_cast<std::size_t>(monomial_index(m))];
        if (q == 0) continue;
        const int base = m.assign == Assign::K12 ? 0 : 2;  // x carries k1 under K12
        out[static_cast<std::size_t>(base + (m.x == Trig::Sin ? 1 : 0))] += q;
    }
    return out;
}

/// Normal derivative of the Q_ij data at y_j = 0 as a profile in x.
inline VertexTrace deriv_trace_y(const Wave& w, int i, int j) {
    VertexTrace out{Rat(0), Rat(0), Rat(0), Rat(0)};
    const auto it = w.regions().find(detail::y_boundary_region(i, j));
    if (it == w.regions().end()) return out;
    for (const TrigMonomial& m : all_monomials()) {
        if (m.y != Trig::Sin) continue;
        const Rat& q = it->second[static_cast<std::size_t>(monomial_index(m))];
        if (q == 0) continue;
        const Rat& ky = m.assign == Assign::K12 ? w.params().k2 : w.params().k1;
        const int base = m.assign == Assign::K12 ? 0 : 2;
        out[static_cast<std::size_t>(base + (m.x == Trig::Sin ? 1 : 0))] += q * ky;
    }
    return out;
}

/// All vertex conditions of the two-particle problem. With particle one at
/// the vertex the wave must take a common value across the quadrants of each
/// column j (continuity) and the sum of the normal derivatives over the
/// column must vanish (Kirchhoff); symmetrically for particle two along each
/// row i.
struct VertexReport {
    struct Item {
        std::string condition;  // vertex-continuity-x/kirchhoff-x/vertex-continuity-y/kirchhoff-y
        int fixed_edge = 0;     // the column (x conditions) or row (y conditions)
        int other_edge = 0;     // second quadrant index for continuity items, 0 for Kirchhoff
        VertexTrace coeffs{};
        bool passed = false;
    };
    std::vector<Item> items;
    bool passed = false;
};

inline VertexReport vertex_residuals(const Wave& w) {
    const int n = w.params().n;
    VertexReport report;
    report.passed = true;
    const auto push = [&](std::string condition, int fixed, int other, VertexTrace coeffs) {
        VertexReport::Item item{std::move(condition), fixed, other, std::move(coeffs), true};
        for (const auto& q : item.coeffs)
            if (q != 0) item.passed = false;
        if (!item.passed) report.passed = false;
        report.items.push_back(std::move(item));
    };
    for (int j = 1; j <= n; ++j) {
        const VertexTrace ref = value_trace_x(w, 1, j);
        for (int i = 2; i <= n; ++i) {
            VertexTrace diff = value_trace_x(w, i, j);
            for (std::size_t s = 0; s < 4; ++s) diff[s] -= ref[s];
            push("vertex-continuity-x", j, i, std::move(diff));
        }
        VertexTrace sum{Rat(0), Rat(0), Rat(0), Rat(0)};
        for (int l = 1; l <= n; ++l) {
            const VertexTrace d = deriv_trace_x(w, l, j);
            for (std::size_t s = 0; s < 4; ++s) sum[s] += d[s];
        }
        push("kirchhoff-x", j, 0, std::move(sum));
    }
    for (int i = 1; i <= n; ++i) {
        const VertexTrace ref = value_trace_y(w, i, 1);
        for (int j = 2; j <= n; ++j) {
            VertexTrace diff = value_trace_y(w, i, j);
            for (std::size_t s = 0; s < 4; ++s) diff[s] -= ref[s];
            push("vertex-continuity-y", i, j, std::move(diff));
        }
        VertexTrace sum{Rat(0), Rat(0), Rat(0), Rat(0)};
        for (int l = 1; l <= n; ++l) {
            const VertexTrace d = deriv_trace_y(w, i, l);
            for (std::size_t s = 0; s < 4; ++s) sum[s] += d[s];
        }
        push("kirchhoff-y", i, 0, std::move(sum));
    }
    return report;
}

/// A wave is an exact eigensolution when it satisfies every vertex condition
/// and the diagonal interaction condition (including diagonal continuity).
inline bool is_eigensolution(const Wave& w) {
    return vertex_residuals(w).passed && dbc_residual(w).passed;
}

}  // namespace stargraph
