// parallel.hpp — execution policy and deterministic chunked reductions.
//
// Floating-point sums are accumulated in fixed-size chunks that are combined
// in index order, so results are bitwise identical for any thread count.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace gmc {

enum class Exec { Serial, Parallel };

namespace detail {
inline constexpr std::size_t kSumChunk = 1024;
}

// Sum of term(i) for i in [0, n), deterministic under Exec::Parallel.
template <class F>
double chunked_sum(std::size_t n, F&& term, Exec exec = Exec::Serial) {
    const std::size_t nchunk = (n + detail::kSumChunk - 1) / detail::kSumChunk;
    std::vector<double> partial(nchunk, 0.0);
    if (exec == Exec::Parallel && nchunk > 1) {
#pragma omp parallel for schedule(static)
        for (long long c = 0; c < static_cast<long long>(nchunk); ++c) {
            const std::size_t lo = static_cast<std::size_t>(c) * detail::kSumChunk;
            const std::size_t hi = lo + detail::kSumChunk < n ? lo + detail::kSumChunk : n;
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += term(i);
            partial[static_cast<std::size_t>(c)] = s;
        }
    } else {
        for (std::size_t c = 0; c < nchunk; ++c) {
            const std::size_t lo = c * detail::kSumChunk;
            const std::size_t hi = lo + detail::kSumChunk < n ? lo + detail::kSumChunk : n;
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += term(i);
            partial[c] = s;
        }
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

// Neumaier-compensated dot product; error stays O(eps * sum|x_i y_i|)
// independent of length, which the identity-residual checks rely on.
inline double dot_compensated(const double* x, const double* y, std::size_t n) {
    double s = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = x[i] * y[i];
        const double t = s + p;
        comp += std::abs(s) >= std::abs(p) ? (s - t) + p : (p - t) + s;
        s = t;
    }
    return s + comp;
}

}  // namespace gmc
