#include "gmc/coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace gmc {

double sqrt_pow(double base, double k) {
    if (k == 0.0) return 1.0;
    if (base == 0.0) return 0.0;
    return std::pow(base, 0.5 * k);
}

namespace {

void fill_rows(ModeCouplingMatrices& m, const ChannelParams& p, std::size_t j0, std::size_t j1) {
    const double mu = p.mu, k = p.kappa;
    const double mk = mu * k;
    const double ck = std::abs(1.0 - k);
    const double a_diag = std::sqrt(k);
    const double a_off = std::sqrt(mu) * (k - 1.0);
    const double e_env = std::sqrt((1.0 - mu) * ck);
    const double e_mem = std::sqrt(mu * ck);
    for (std::size_t j = j0; j < j1; ++j) {
        // row j corresponds to output b_{j+1}
        m.A(j, j) = a_diag;
        for (std::size_t h = 0; h < j; ++h) m.A(j, h) = a_off * sqrt_pow(mk, double(j - h - 1));
        m.E(j, 0) = e_mem * sqrt_pow(mk, double(j));
        for (std::size_t h = 0; h <= j; ++h) m.E(j, h + 1) = e_env * sqrt_pow(mk, double(j - h));
    }
}

}  // namespace

ModeCouplingMatrices build_coupling_matrices(const ChannelParams& p, Exec exec) {
    validate(p);
    if (p.n > kMaxUses)
        throw std::invalid_argument("build_coupling_matrices: n exceeds the supported maximum");
    const std::size_t n = p.n;
    ModeCouplingMatrices m{Matrix(n, n, 0.0), Matrix(n, n + 1, 0.0), p};
    if (exec == Exec::Parallel && n >= 64) {
#pragma omp parallel for schedule(static)
        for (long long j = 0; j < static_cast<long long>(n); ++j)
            fill_rows(m, p, static_cast<std::size_t>(j), static_cast<std::size_t>(j) + 1);
    } else {
        fill_rows(m, p, 0, n);
    }
    if (!all_finite(m.A) || !all_finite(m.E))
        throw std::runtime_error("build_coupling_matrices: entries overflowed; reduce n or mu*kappa");
    return m;
}

ModeCouplingMatrices build_coupling_matrices_serial(const ChannelParams& p) {
    return build_coupling_matrices(p, Exec::Serial);
}

double commutation_residual(const ModeCouplingMatrices& m) {
    const double sign = m.params.kappa <= 1.0 ? 1.0 : -1.0;
    const std::size_t n = m.A.rows();
    double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst) if (n >= 64)
    for (long long j = 0; j < static_cast<long long>(n); ++j) {
        const std::size_t jj = static_cast<std::size_t>(j);
        for (std::size_t h = 0; h <= jj; ++h) {
            const double aa = dot_compensated(m.A.row_ptr(jj), m.A.row_ptr(h), n);
            const double ee = dot_compensated(m.E.row_ptr(jj), m.E.row_ptr(h), n + 1);
            const double want = jj == h ? 1.0 : 0.0;
            const double r = std::abs(aa + sign * ee - want);
            if (r > worst) worst = r;
        }
    }
    return worst;
}

}  // namespace gmc
