#include "gmc/gram.hpp"

#include <cmath>
#include <stdexcept>

#include "gmc/coupling.hpp"

namespace gmc {

double kappa_infinity(double mu, double kappa) {
    const double mk = mu * kappa;
    if (mk >= 1.0)
        throw std::domain_error("kappa_infinity: defined below threshold (mu*kappa < 1) only");
    return kappa + mu * (kappa - 1.0) * (kappa - 1.0) / (1.0 - mk);
}

namespace {

bool at_threshold(const ChannelParams& p) {
    return std::abs(p.mu * p.kappa - 1.0) <= kThresholdTolerance;
}

double entry_general(const ChannelParams& p, std::size_t j, std::size_t h) {
    const double mk = p.mu * p.kappa;
    const std::size_t mn = j < h ? j : h;
    double geo = 0.0;  // sum_{h'=0}^{mn-2} (mu kappa)^h', empty for mn = 1
    if (mn >= 2) {
        if (std::abs(mk - 1.0) <= kThresholdTolerance)
            geo = double(mn - 1);
        else
            geo = (1.0 - std::pow(mk, double(mn - 1))) / (1.0 - mk);
    }
    const double kjh = p.kappa + p.mu * (p.kappa - 1.0) * (p.kappa - 1.0) * geo;
    const double delta = j == h ? 1.0 : 0.0;
    const double d = j > h ? double(j - h) : double(h - j);
    return delta + (kjh - 1.0) * sqrt_pow(mk, d);
}

double entry_threshold(const ChannelParams& p, std::size_t j, std::size_t h) {
    const double mu = p.mu;
    const std::size_t mn = j < h ? j : h;
    const double delta = j == h ? 1.0 : 0.0;
    return delta + (1.0 - mu) + (1.0 - mu) * (1.0 - mu) / mu * double(mn);
}

}  // namespace

double gram_entry(const ChannelParams& p, std::size_t j, std::size_t h) {
    if (at_threshold(p)) {
        if (p.mu <= 0.0)
            throw std::domain_error("gram_entry: threshold form needs mu > 0");
        return entry_threshold(p, j, h);
    }
    return entry_general(p, j, h);
}

GramMatrix build_gram_matrix(const ChannelParams& p, Exec exec) {
    validate(p);
    if (p.n > kMaxUses)
        throw std::invalid_argument("build_gram_matrix: n exceeds the supported maximum");
    const bool thr = at_threshold(p);
    if (thr && p.mu <= 0.0)
        throw std::domain_error("build_gram_matrix: threshold form needs mu > 0");
    const std::size_t n = p.n;
    GramMatrix g{Matrix(n, n), p};
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel && n >= 64)
    for (long long j = 0; j < static_cast<long long>(n); ++j) {
        const std::size_t jj = static_cast<std::size_t>(j);
        for (std::size_t h = 0; h <= jj; ++h) {
            const double v = thr ? entry_threshold(p, jj + 1, h + 1) : entry_general(p, jj + 1, h + 1);
            g.M(jj, h) = v;
            g.M(h, jj) = v;  // symmetric by construction
        }
    }
    if (!all_finite(g.M))
        throw std::runtime_error("build_gram_matrix: entries overflowed; reduce n or mu*kappa");
    return g;
}

GramMatrix build_gram_matrix_serial(const ChannelParams& p) {
    return build_gram_matrix(p, Exec::Serial);
}

}  // namespace gmc
