#pragma once

#include "wave.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace stargraph {

/// Thresholds used by the floating-point cross checks. The eigen-residual of
/// an exact solution must shrink at second order in the step (central five
/// point stencil); sampled boundary-condition residuals of exact solutions
/// must stay below a small relative bound.
constexpr double kOrderLow = 1.8;
constexpr double kOrderHigh = 2.2;
constexpr double kSampledRelTol = 1e-2;
constexpr double kEigenStep = 1e-3;

/// A concrete point inside one region of the cut configuration space.
struct EvalPoint {
    Region region;
    double x = 0, y = 0;
};

inline void check_point(const EvalPoint& p, int n) {
    check_region(p.region, n);
    if (!(p.x >= 0) || !(p.y >= 0)) throw std::domain_error("evaluation point outside the quadrant");
    if (p.region.kind == RegionKind::Lower && !(p.x > p.y))
        throw std::domain_error("lower-triangle point must have x > y");
    if (p.region.kind == RegionKind::Upper && !(p.x < p.y))
        throw std::domain_error("upper-triangle point must have x < y");
}

/// Pointwise value of the wave; the only bridge from exact coefficients to
/// floating point.
inline double eval(const Wave& w, const EvalPoint& p) {
    check_point(p, w.params().n);
    const auto it = w.regions().find(p.region);
    if (it == w.regions().end()) return 0.0;
    const double k1 = rat_double(w.params().k1);
    const double k2 = rat_double(w.params().k2);
    double out = 0;
    for (const TrigMonomial& m : all_monomials()) {
        const Rat& q = it->second[static_cast<std::size_t>(monomial_index(m))];
        if (q == 0) continue;
        const double kx = m.assign == Assign::K12 ? k1 : k2;
        const double ky = m.assign == Assign::K12 ? k2 : k1;
        const double fx = m.x == Trig::Cos ? std::cos(kx * p.x) : std::sin(kx * p.x);
        const double fy = m.y == Trig::Cos ? std::cos(ky * p.y) : std::sin(ky * p.y);
        out += rat_double(q) * fx * fy;
    }
    return out;
}

namespace detail {

inline void check_stencil_margin(const EvalPoint& p, double h) {
    const bool ok = [&] {
        switch (p.region.kind) {
            case RegionKind::Off:
                return p.x > 2 * h && p.y > 2 * h;
            case RegionKind::Lower:
                return p.y > 2 * h && p.x - p.y > 2 * h;
            case RegionKind::Upper:
                return p.x > 2 * h && p.y - p.x > 2 * h;
        }
        return false;
    }();
    if (!ok) throw std::domain_error("stencil too close to a region boundary");
}

}  // namespace detail

/// Residual of the eigenvalue equation -(Laplacian) u = (k1^2 + k2^2) u at a
/// point, with the Laplacian replaced by the five-point stencil of step h.
/// For exact solutions this is pure truncation error, O(h^2). The point must
/// keep distance > 2h from every region boundary.
inline double eigen_residual(const Wave& w, const EvalPoint& p, double h) {
    if (!(h > 0)) throw std::invalid_argument("step must be positive");
    check_point(p, w.params().n);
    detail::check_stencil_margin(p, h);
    const auto at = [&](double x, double y) { return eval(w, EvalPoint{p.region, x, y}); };
    const double lap =
        (at(p.x + h, p.y) + at(p.x - h, p.y) + at(p.x, p.y + h) + at(p.x, p.y - h) - 4 * at(p.x, p.y)) / (h * h);
    const double k1 = rat_double(w.params().k1);
    const double k2 = rat_double(w.params().k2);
    return -lap - (k1 * k1 + k2 * k2) * at(p.x, p.y);
}

namespace detail {

// Interior probe points per region kind, well away from all boundaries.
inline std::vector<std::pair<double, double>> probe_points(RegionKind kind) {
    switch (kind) {
        case RegionKind::Off:
            return {{0.8, 1.3}, {1.15, 0.55}};
        case RegionKind::Lower:
            return {{1.3, 0.8}, {1.15, 0.55}};
        case RegionKind::Upper:
            return {{0.8, 1.3}, {0.55, 1.15}};
    }
    return {};
}

}  // namespace detail

/// Sum of |eigen_residual| over fixed probe points in every supported
/// region.
inline double eigen_probe(const Wave& w, double h) {
    double total = 0;
    for (const auto& [region, coeffs] : w.regions())
        for (const auto& [x, y] : detail::probe_points(region.kind))
            total += std::abs(eigen_residual(w, EvalPoint{region, x, y}, h));
    return total;
}

/// Observed convergence order of the eigen-residual between steps h and h/2;
/// close to 2 for exact solutions. Throws for waves with no measurable
/// residual (the zero wave).
inline double eigen_order(const Wave& w, double h) {
    const double coarse = eigen_probe(w, h);
    const double fine = eigen_probe(w, h / 2);
    if (coarse <= 0 || fine <= 0) throw std::domain_error("no measurable residual to estimate an order from");
    return std::log2(coarse / fine);
}

enum class SampledCondition { VertexContinuity, Kirchhoff, DiagContinuity, Dbc };

/// Outcome of a sampled check: the largest residual seen and the largest
/// magnitude of the quantities entering it, for forming a relative error.
struct SampledResult {
    double max_residual = 0;
    double scale = 0;

    double relative() const { return scale > 0 ? max_residual / scale : max_residual; }
};

namespace detail {

// Low-discrepancy positions t_m in [0.6, 1.6): a golden-ratio Weyl sequence
// whose phase is seeded by (n, edge) so different edges probe different
// points while runs stay reproducible.
inline double weyl_sample(int n, int edge, int m) {
    constexpr double g = 0.6180339887498949;
    const auto frac = [](double v) { return v - std::floor(v); };
    const double s0 = frac((13.0 * n + 5.0 * edge) * g);
    return 0.6 + frac(s0 + (m + 1) * g);
}

inline Region column_region(int l, int j) { return l == j ? Region::upper(j) : Region::off(l, j); }
inline Region row_region(int i, int l) { return l == i ? Region::lower(i) : Region::off(i, l); }

}  // namespace detail

/// Floating-point spot check of one condition class, sampled at `samples`
/// low-discrepancy positions per edge with finite-difference step h.
inline SampledResult sampled_condition_check(const Wave& w, SampledCondition condition, int samples, double h) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    if (!(h > 0) || !(h < 0.15)) throw std::invalid_argument("step out of range");
    const int n = w.params().n;
    SampledResult out;
    const auto track = [&](double residual, double scale) {
        out.max_residual = std::max(out.max_residual, std::abs(residual));
        out.scale = std::max(out.scale, std::abs(scale));
    };
    switch (condition) {
        case SampledCondition::VertexContinuity:
            for (int j = 1; j <= n; ++j)
                for (int m = 0; m < samples; ++m) {
                    const double t = detail::weyl_sample(n, j, m);
                    const double ref = eval(w, EvalPoint{detail::column_region(1, j), 0, t});
                    for (int l = 2; l <= n; ++l)
                        track(eval(w, EvalPoint{detail::column_region(l, j), 0, t}) - ref, ref);
                    const double refy = eval(w, EvalPoint{detail::row_region(j, 1), t, 0});
                    for (int l = 2; l <= n; ++l)
                        track(eval(w, EvalPoint{detail::row_region(j, l), t, 0}) - refy, refy);
                }
            break;
        case SampledCondition::Kirchhoff: {
            // Scale against both the observed derivatives and k times the
            // boundary values: a wave built from cosines alone has exactly
            // vanishing normal derivatives, and without the k|u| term the
            // relative error would divide truncation noise by itself.
            const double kmax =
                std::max(std::abs(rat_double(w.params().k1)), std::abs(rat_double(w.params().k2)));
            for (int j = 1; j <= n; ++j)
                for (int m = 0; m < samples; ++m) {
                    const double t = detail::weyl_sample(n, j, m);
                    double sum_x = 0, sum_y = 0;
                    for (int l = 1; l <= n; ++l) {
                        const double vx = eval(w, EvalPoint{detail::column_region(l, j), 0, t});
                        const double vy = eval(w, EvalPoint{detail::row_region(j, l), t, 0});
                        const double dx = (eval(w, EvalPoint{detail::column_region(l, j), h, t}) - vx) / h;
                        const double dy = (eval(w, EvalPoint{detail::row_region(j, l), t, h}) - vy) / h;
                        sum_x += dx;
                        sum_y += dy;
                        out.scale = std::max(
                            {out.scale, std::abs(dx), std::abs(dy), kmax * std::abs(vx), kmax * std::abs(vy)});
                    }
                    out.max_residual = std::max({out.max_residual, std::abs(sum_x), std::abs(sum_y)});
                }
            break;
        }
        case SampledCondition::DiagContinuity:
            // Each side is extrapolated linearly onto the diagonal so that a
            // continuous wave leaves only an O(h^2) residual even when its
            // trace vanishes identically; the scale is the wave's size near
            // the diagonal, not the possibly-zero trace value.
            for (int e = 1; e <= n; ++e)
                for (int m = 0; m < samples; ++m) {
                    const double t = detail::weyl_sample(n, e, m);
                    const auto up = [&](double x, double y) { return eval(w, EvalPoint{Region::upper(e), x, y}); };
                    const auto lo = [&](double x, double y) { return eval(w, EvalPoint{Region::lower(e), x, y}); };
                    const double eu = 2 * up(t - h, t + h) - up(t - 2 * h, t + 2 * h);
                    const double el = 2 * lo(t + h, t - h) - lo(t + 2 * h, t - 2 * h);
                    const double d = 0.25;
                    const double near_diag = std::max(std::abs(up(t - d, t + d)), std::abs(lo(t + d, t - d)));
                    track(eu - el, std::max({std::abs(eu), std::abs(el), near_diag}));
                }
            break;
        case SampledCondition::Dbc:
            // One-sided transversal half-derivatives (d/dx - d/dy)/2 from
            // points offset by h off the diagonal, central differences of
            // width 2h inside each triangle; jump against c times the mean
            // of the two one-sided values.
            for (int e = 1; e <= n; ++e)
                for (int m = 0; m < samples; ++m) {
                    const double t = detail::weyl_sample(n, e, m);
                    const auto up = [&](double x, double y) { return eval(w, EvalPoint{Region::upper(e), x, y}); };
                    const auto lo = [&](double x, double y) { return eval(w, EvalPoint{Region::lower(e), x, y}); };
                    const double du = (up(t, t + h) - up(t - 2 * h, t + h)) / (4 * h) -
                                      (up(t - h, t + 2 * h) - up(t - h, t)) / (4 * h);
                    const double dl = (lo(t + 2 * h, t - h) - lo(t, t - h)) / (4 * h) -
                                      (lo(t + h, t) - lo(t + h, t - 2 * h)) / (4 * h);
                    const double value = (up(t - h, t + h) + lo(t + h, t - h)) / 2;
                    const double rhs = rat_double(w.params().c) * value;
                    track((du - dl) - rhs, rhs);
                }
            break;
    }
    return out;
}

}  // namespace stargraph
