// quadrature.hpp — composite-midpoint averaging over [0, 2*pi] with panel
// splits at caller-declared breakpoints and dyadic refinement per panel.
// Midpoint never evaluates panel endpoints, so integrable endpoint
// singularities and kinks located at breakpoints are handled cleanly.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gmc/parallel.hpp"

namespace gmc {

struct QuadratureSpec {
    int base_points = 4096;      // composite points across the full period
    double abs_tol = 1e-9;       // absolute tolerance on the returned mean
    int max_refine_levels = 10;  // dyadic doublings per panel beyond the base
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;  // false flags an estimate above tolerance
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

namespace detail {

// Panel edges for [0, 2pi] split at the sorted interior breakpoints.
inline std::vector<double> panel_edges(std::vector<double> breaks) {
    std::vector<double> edges;
    edges.push_back(0.0);
    std::sort(breaks.begin(), breaks.end());
    for (double b : breaks)
        if (b > 1e-14 && b < kTwoPi - 1e-14 && (edges.empty() || b > edges.back() + 1e-14))
            edges.push_back(b);
    edges.push_back(kTwoPi);
    return edges;
}

template <class F>
double midpoint_sum(F&& f, double a, double h, std::size_t m, Exec exec) {
    return h * chunked_sum(m, [&](std::size_t i) { return f(a + (double(i) + 0.5) * h); }, exec);
}

}  // namespace detail

// (1/2pi) * integral of f(z) dz over [0, 2pi], panels split at `breaks`.
template <class F>
QuadratureResult integrate_mean(F&& f, const std::vector<double>& breaks,
                                const QuadratureSpec& spec, Exec exec = Exec::Serial) {
    const auto edges = detail::panel_edges(breaks);
    QuadratureResult out;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p], b = edges[p + 1];
        const double len = b - a;
        const double tol_raw = spec.abs_tol * len;  // mean tolerance apportioned by length
        std::size_t m = std::max<std::size_t>(
            8, static_cast<std::size_t>(std::lround(spec.base_points * len / kTwoPi)));
        double prev = detail::midpoint_sum(f, a, len / double(m), m, exec);
        double cur = prev, err = 0.0;
        bool ok = false;
        for (int lev = 0; lev < spec.max_refine_levels; ++lev) {
            m *= 2;
            cur = detail::midpoint_sum(f, a, len / double(m), m, exec);
            err = std::abs(cur - prev) / 3.0;  // midpoint is O(h^2)
            if (err <= tol_raw) {
                ok = true;
                break;
            }
            prev = cur;
        }
        out.value += cur + (cur - prev) / 3.0;  // Richardson-extrapolated panel value
        out.error_estimate += err;
        if (!ok) out.converged = false;
    }
    out.value /= kTwoPi;
    out.error_estimate /= kTwoPi;
    return out;
}

}  // namespace gmc
