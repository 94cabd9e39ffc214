#pragma once

#include "linalg.hpp"
#include "wave.hpp"

#include <string>
#include <utility>
#include <vector>

namespace stargraph {

/// Evaluation context of a one-particle factor inside a two-particle region.
/// A factor living on edge e is evaluated with the other particle either on
/// a different edge, or on the same edge with the factor's own coordinate
/// greater respectively smaller than the other coordinate. Smooth states
/// carry the same profile in all three contexts; the non-smooth state does
/// not.
enum class Context { DiffEdge = 0, OwnGreater = 1, OwnLess = 2 };

/// cos/sin amplitude pair of a one-particle factor on a single edge.
struct EdgeProfile {
    Rat cos_c{0}, sin_c{0};

    friend bool operator==(const EdgeProfile& a, const EdgeProfile& b) {
        return a.cos_c == b.cos_c && a.sin_c == b.sin_c;
    }
    friend bool operator!=(const EdgeProfile& a, const EdgeProfile& b) { return !(a == b); }
};

/// A one-particle function on the star graph, stored momentum-free: per edge
/// and context the amplitudes of cos(k s) and sin(k s). The momentum itself
/// is attached only when two factors are multiplied into a region-wise wave.
class OneParticleState {
public:
    explicit OneParticleState(int n) : n_(n), edges_(static_cast<std::size_t>(n)) {
        if (n < 2) throw std::invalid_argument("n must be at least 2");
    }

    int edge_count() const { return n_; }

    const EdgeProfile& profile(int edge, Context ctx) const {
        check_edge(edge);
        return edges_[static_cast<std::size_t>(edge - 1)][static_cast<std::size_t>(ctx)];
    }
    EdgeProfile& profile(int edge, Context ctx) {
        check_edge(edge);
        return edges_[static_cast<std::size_t>(edge - 1)][static_cast<std::size_t>(ctx)];
    }

    void set_all_contexts(int edge, const EdgeProfile& p) {
        for (const Context ctx : {Context::DiffEdge, Context::OwnGreater, Context::OwnLess}) profile(edge, ctx) = p;
    }

    /// True when the state looks the same from every context on every edge.
    bool smooth() const {
        for (int e = 1; e <= n_; ++e)
            if (profile(e, Context::DiffEdge) != profile(e, Context::OwnGreater) ||
                profile(e, Context::DiffEdge) != profile(e, Context::OwnLess))
                return false;
        return true;
    }

    OneParticleState& operator+=(const OneParticleState& other) {
        if (n_ != other.n_) throw std::invalid_argument("one-particle state size mismatch");
        for (std::size_t e = 0; e < edges_.size(); ++e)
            for (std::size_t ctx = 0; ctx < 3; ++ctx) {
                edges_[e][ctx].cos_c += other.edges_[e][ctx].cos_c;
                edges_[e][ctx].sin_c += other.edges_[e][ctx].sin_c;
            }
        return *this;
    }
    OneParticleState& operator*=(const Rat& s) {
        for (auto& edge : edges_)
            for (auto& p : edge) {
                p.cos_c *= s;
                p.sin_c *= s;
            }
        return *this;
    }
    friend OneParticleState operator+(OneParticleState a, const OneParticleState& b) { return a += b; }
    friend OneParticleState operator*(const Rat& s, OneParticleState a) { return a *= s; }

    friend bool operator==(const OneParticleState& a, const OneParticleState& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    void check_edge(int edge) const {
        if (edge < 1 || edge > n_) throw std::invalid_argument("edge out of range");
    }

    int n_;
    std::vector<std::array<EdgeProfile, 3>> edges_;
};

/// The n+1 one-particle basis states at a fixed momentum.
///   phi(n, 0): cos on every edge (the symmetric Kirchhoff state).
///   phi(n, j), 1 <= j <= n-1: sin on edge j, -sin on edge j+1.
///   phi(n, n): sin with amplitude 1 on every edge as seen from a different
///              edge or with own coordinate greater, but amplitude 1-n with
///              own coordinate smaller; continuous at the vertex (value 0)
///              yet not smooth across the diagonal.
inline OneParticleState phi(int n, int j) {
    if (j < 0 || j > n) throw std::invalid_argument("phi index out of range");
    OneParticleState f(n);
    if (j == 0) {
        for (int e = 1; e <= n; ++e) f.set_all_contexts(e, EdgeProfile{Rat(1), Rat(0)});
    } else if (j < n) {
        f.set_all_contexts(j, EdgeProfile{Rat(0), Rat(1)});
        f.set_all_contexts(j + 1, EdgeProfile{Rat(0), Rat(-1)});
    } else {
        for (int e = 1; e <= n; ++e) {
            f.profile(e, Context::DiffEdge) = EdgeProfile{Rat(0), Rat(1)};
            f.profile(e, Context::OwnGreater) = EdgeProfile{Rat(0), Rat(1)};
            f.profile(e, Context::OwnLess) = EdgeProfile{Rat(0), Rat(1 - n)};
        }
    }
    return f;
}

/// Vertex scattering matrix of the one-particle problem: S = 2P - I with P
/// the projector onto the constant vector, i.e. S_lj = 2/n - delta_lj.
inline RatMatrix scattering_matrix(int n) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    RatMatrix s(n, n);
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j) s.at(l, j) = Rat(2) / Rat(n) - (l == j ? Rat(1) : Rat(0));
    return s;
}

/// Scattering solution injected on edge l: delta_lj e^{iks} + S_lj e^{-iks}
/// on edge j, stored as real part (cos amplitudes delta_lj + S_lj) and
/// imaginary part (sin amplitudes delta_lj - S_lj). Smooth by construction.
struct ScatteringState {
    OneParticleState real, imag;
};

inline ScatteringState scattering_state(int n, int l) {
    if (l < 1 || l > n) throw std::invalid_argument("edge out of range");
    const RatMatrix s = scattering_matrix(n);
    ScatteringState out{OneParticleState(n), OneParticleState(n)};
    for (int j = 1; j <= n; ++j) {
        const Rat delta = (j == l) ? Rat(1) : Rat(0);
        out.real.set_all_contexts(j, EdgeProfile{delta + s.at(l - 1, j - 1), Rat(0)});
        out.imag.set_all_contexts(j, EdgeProfile{Rat(0), delta - s.at(l - 1, j - 1)});
    }
    return out;
}

/// Two-particle product fx(x) * fy(y) expanded region by region. The
/// momentum assignment decides which factor carries k1: under K12 the x
/// factor, under K21 the y factor.
inline Wave product(const Params& params, const OneParticleState& fx, const OneParticleState& fy, Assign assign) {
    if (fx.edge_count() != params.n || fy.edge_count() != params.n)
        throw std::invalid_argument("one-particle state size mismatch");
    Wave w(params);
    for (const Region& region : all_regions(params.n)) {
        EdgeProfile px, py;
        switch (region.kind) {
            case RegionKind::Off:
                px = fx.profile(region.i, Context::DiffEdge);
                py = fy.profile(region.j, Context::DiffEdge);
                break;
            case RegionKind::Lower:  // x > y
                px = fx.profile(region.i, Context::OwnGreater);
                py = fy.profile(region.i, Context::OwnLess);
                break;
            case RegionKind::Upper:  // x < y
                px = fx.profile(region.i, Context::OwnLess);
                py = fy.profile(region.i, Context::OwnGreater);
                break;
        }
        w.add_coeff(region, TrigMonomial{assign, Trig::Cos, Trig::Cos}, px.cos_c * py.cos_c);
        w.add_coeff(region, TrigMonomial{assign, Trig::Cos, Trig::Sin}, px.cos_c * py.sin_c);
        w.add_coeff(region, TrigMonomial{assign, Trig::Sin, Trig::Cos}, px.sin_c * py.cos_c);
        w.add_coeff(region, TrigMonomial{assign, Trig::Sin, Trig::Sin}, px.sin_c * py.sin_c);
    }
    return w;
}

/// Phi[i,j]_a = phi^i(x) phi^j(y) at momentum assignment a.
inline Wave phi_wave(const Params& params, int i, int j, Assign assign) {
    return product(params, phi(params.n, i), phi(params.n, j), assign);
}

/// Psi[i]_a = Phi[i,n]_a - Phi[n,i]_a for 1 <= i <= n-1; non-smooth across
/// the diagonal but continuous.
inline Wave psi_wave(const Params& params, int i, Assign assign) {
    if (i < 1 || i > params.n - 1) throw std::invalid_argument("psi index out of range");
    return phi_wave(params, i, params.n, assign) - phi_wave(params, params.n, i, assign);
}

inline std::string assign_suffix(Assign a) { return a == Assign::K12 ? "_12" : "_21"; }

inline std::string phi_name(int i, int j, Assign a) {
    return "Phi[" + std::to_string(i) + "," + std::to_string(j) + "]" + assign_suffix(a);
}

inline std::string psi_name(int i, Assign a) { return "Psi[" + std::to_string(i) + "]" + assign_suffix(a); }

/// A list of waves together with human-readable member names.
struct WaveList {
    std::vector<Wave> members;
    std::vector<std::string> names;

    void push(Wave w, std::string name) {
        members.push_back(std::move(w));
        names.push_back(std::move(name));
    }
    std::size_t size() const { return members.size(); }

    WaveList& append(const WaveList& other) {
        members.insert(members.end(), other.members.begin(), other.members.end());
        names.insert(names.end(), other.names.begin(), other.names.end());
        return *this;
    }
};

inline RatMatrix coords_matrix(const std::vector<Wave>& waves, const Params& params) {
    RatMatrix m(static_cast<int>(waves.size()), 8 * params.n * (params.n + 1));
    for (std::size_t r = 0; r < waves.size(); ++r) {
        const auto coords = to_coords(waves[r]);
        for (std::size_t c = 0; c < coords.size(); ++c) m.at(static_cast<int>(r), static_cast<int>(c)) = coords[c];
    }
    return m;
}

/// The four product subbases classified by diagonal smoothness and by parity
/// under simultaneous sign flip of both momenta, plus the two assignment-
/// augmented generator sets used by the eigensolution search.
enum class SubbasisKind {
    SmoothSymmetric,      // {Phi[0,0], Phi[i,j] : 1 <= i,j <= n-1}, dim (n-1)^2 + 1
    SmoothAntisymmetric,  // {Phi[0,i], Phi[i,0] : 1 <= i <= n-1},   dim 2(n-1)
    NonSmoothSymmetric,   // {Psi[i] : 1 <= i <= n-1},               dim n-1
    NonSmoothAntisymmetric,  // {Phi[0,n], Phi[n,0]},                dim 2
    CBas,                 // smooth states at both assignments,      dim 2n^2
    DBas                  // non-smooth states at both assignments,  dim 2n+2
};

inline WaveList subbasis(const Params& params, SubbasisKind kind) {
    const int n = params.n;
    WaveList out;
    switch (kind) {
        case SubbasisKind::SmoothSymmetric:
            out.push(phi_wave(params, 0, 0, Assign::K12), phi_name(0, 0, Assign::K12));
            for (int i = 1; i <= n - 1; ++i)
                for (int j = 1; j <= n - 1; ++j)
                    out.push(phi_wave(params, i, j, Assign::K12), phi_name(i, j, Assign::K12));
            break;
        case SubbasisKind::SmoothAntisymmetric:
            for (int i = 1; i <= n - 1; ++i) {
                out.push(phi_wave(params, 0, i, Assign::K12), phi_name(0, i, Assign::K12));
                out.push(phi_wave(params, i, 0, Assign::K12), phi_name(i, 0, Assign::K12));
            }
            break;
        case SubbasisKind::NonSmoothSymmetric:
            for (int i = 1; i <= n - 1; ++i) out.push(psi_wave(params, i, Assign::K12), psi_name(i, Assign::K12));
            break;
        case SubbasisKind::NonSmoothAntisymmetric:
            out.push(phi_wave(params, 0, n, Assign::K12), phi_name(0, n, Assign::K12));
            out.push(phi_wave(params, n, 0, Assign::K12), phi_name(n, 0, Assign::K12));
            break;
        case SubbasisKind::CBas:
            for (int i = 0; i <= n - 1; ++i)
                for (int j = 0; j <= n - 1; ++j)
                    for (const Assign a : {Assign::K12, Assign::K21})
                        out.push(phi_wave(params, i, j, a), phi_name(i, j, a));
            break;
        case SubbasisKind::DBas:
            for (int i = 1; i <= n - 1; ++i)
                for (const Assign a : {Assign::K12, Assign::K21}) out.push(psi_wave(params, i, a), psi_name(i, a));
            for (const Assign a : {Assign::K12, Assign::K21})
                out.push(phi_wave(params, 0, n, a), phi_name(0, n, a));
            for (const Assign a : {Assign::K12, Assign::K21})
                out.push(phi_wave(params, n, 0, a), phi_name(n, 0, a));
            break;
    }
    return out;
}

/// The full generator set driving the eigensolution search: CBas followed by
/// DBas, 2n^2 + 2n + 2 members, linearly independent.
inline WaveList generators(const Params& params) {
    WaveList out = subbasis(params, SubbasisKind::CBas);
    out.append(subbasis(params, SubbasisKind::DBas));
    return out;
}

/// The redundant bookkeeping set: every product Phi[i,j]_a with
/// 0 <= i,j <= n at both assignments, 2(n+1)^2 members. Spans the same space
/// as generators() but contains 2n dependencies.
inline WaveList redundant_generators(const Params& params) {
    WaveList out;
    for (int i = 0; i <= params.n; ++i)
        for (int j = 0; j <= params.n; ++j)
            for (const Assign a : {Assign::K12, Assign::K21})
                out.push(phi_wave(params, i, j, a), phi_name(i, j, a));
    return out;
}

struct DependencyReport {
    // Phi[n,n]_a and Phi[i,n]_a + Phi[n,i]_a are smooth and must lie in the
    // span of the smooth subbasis at the same assignment.
    bool smooth_deps_in_span = false;
    int generator_count = 0;
    int generator_rank = 0;
    int redundant_count = 0;
    int redundant_rank = 0;
    bool passed = false;
};

inline DependencyReport verify_dependencies(const Params& params) {
    const int n = params.n;
    DependencyReport report;

    const WaveList cb = subbasis(params, SubbasisKind::CBas);
    const RrefResult cb_rref = rref(coords_matrix(cb.members, params));
    report.smooth_deps_in_span = true;
    for (const Assign a : {Assign::K12, Assign::K21}) {
        std::vector<Wave> deps;
        deps.push_back(phi_wave(params, n, n, a));
        for (int i = 1; i <= n - 1; ++i) deps.push_back(phi_wave(params, i, n, a) + phi_wave(params, n, i, a));
        for (const Wave& w : deps)
            if (!in_rowspace(to_coords(w), cb_rref)) report.smooth_deps_in_span = false;
    }

    const WaveList gens = generators(params);
    report.generator_count = static_cast<int>(gens.size());
    report.generator_rank = rank(coords_matrix(gens.members, params));

    const WaveList redundant = redundant_generators(params);
    report.redundant_count = static_cast<int>(redundant.size());
    report.redundant_rank = rank(coords_matrix(redundant.members, params));

    report.passed = report.smooth_deps_in_span && report.generator_rank == report.generator_count &&
                    report.redundant_rank == report.generator_count;
    return report;
}

}  // namespace stargraph
