#include "gmc/forgetful.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "gmc/coupling.hpp"
#include "gmc/eigensolver.hpp"

namespace gmc {

namespace {
constexpr double kVacuumVariance = 0.5;
}

GaussianMemoryScenario vacuum_scenario(std::size_t n) {
    GaussianMemoryScenario s;
    s.mean_m = 0.0;
    s.mean_a.assign(n, 0.0);
    s.mean_e.assign(n, 0.0);
    s.V_m = kVacuumVariance;
    s.C.assign(n, 0.0);
    s.D.assign(n, 0.0);
    s.V_a = Matrix(n, n, 0.0);
    s.V_e = Matrix(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        s.V_a(i, i) = kVacuumVariance;
        s.V_e(i, i) = kVacuumVariance;
    }
    return s;
}

GaussianMemoryScenario displaced_heated_scenario(std::size_t n, std::complex<double> displacement,
                                                 double extra_variance) {
    GaussianMemoryScenario s = vacuum_scenario(n);
    s.mean_m = displacement;
    s.V_m = kVacuumVariance + extra_variance;
    return s;
}

double min_covariance_eigenvalue(const GaussianMemoryScenario& s) {
    const std::size_t n = s.C.size();
    Matrix v(2 * n + 1, 2 * n + 1, 0.0);
    v(0, 0) = s.V_m;
    for (std::size_t j = 0; j < n; ++j) {
        v(0, 1 + j) = s.C[j];
        v(1 + j, 0) = s.C[j];
        v(0, 1 + n + j) = s.D[j];
        v(1 + n + j, 0) = s.D[j];
        for (std::size_t h = 0; h < n; ++h) {
            v(1 + j, 1 + h) = s.V_a(j, h);
            v(1 + n + j, 1 + n + h) = s.V_e(j, h);
        }
    }
    return eigh_values(v).front();
}

void validate(const GaussianMemoryScenario& s, std::size_t n) {
    const bool shapes_ok = s.mean_a.size() == n && s.mean_e.size() == n && s.C.size() == n &&
                           s.D.size() == n && s.V_a.rows() == n && s.V_a.cols() == n &&
                           s.V_e.rows() == n && s.V_e.cols() == n;
    if (!shapes_ok)
        throw std::invalid_argument("GaussianMemoryScenario: block dimensions do not match n");
    if (min_covariance_eigenvalue(s) < -1e-10)
        throw std::invalid_argument("GaussianMemoryScenario: covariance is not positive semidefinite");
}

MemoryCouplingVectors memory_coupling_vectors(const ChannelParams& p) {
    validate(p);
    const std::size_t n = p.n;
    const double mk = p.mu * p.kappa;
    const double xs = p.kappa <= 1.0 ? std::sqrt(1.0 - p.kappa) : std::sqrt(p.kappa - 1.0);
    const double ys = std::sqrt((1.0 - p.mu) * p.kappa);
    MemoryCouplingVectors v;
    v.X.resize(n);
    v.Y.resize(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const double fall = sqrt_pow(mk, double(n - j));
        v.X[j - 1] = xs * fall;
        v.Y[j - 1] = ys * fall;
    }
    return v;
}

MemoryMomentResult propagate_memory_moments(const GaussianMemoryScenario& s,
                                            const ChannelParams& p) {
    const std::size_t n = p.n;
    const bool shapes_ok = s.mean_a.size() == n && s.mean_e.size() == n && s.C.size() == n &&
                           s.D.size() == n && s.V_a.rows() == n && s.V_e.rows() == n;
    if (!shapes_ok)
        throw std::invalid_argument("propagate_memory_moments: scenario dimensions do not match n");
    const MemoryCouplingVectors v = memory_coupling_vectors(p);
    const double mk = p.mu * p.kappa;
    const double fade = sqrt_pow(mk, double(n));
    const bool amplifying = p.kappa > 1.0;

    MemoryMomentResult out;
    out.mean_out = fade * s.mean_m;
    for (std::size_t j = 0; j < n; ++j) {
        // the amplifying step couples a_j^dag, so input means enter conjugated
        out.mean_out += v.X[j] * (amplifying ? std::conj(s.mean_a[j]) : s.mean_a[j]);
        out.mean_out += v.Y[j] * s.mean_e[j];
    }

    double cross = 0.0;
    for (std::size_t j = 0; j < n; ++j) cross += v.X[j] * s.C[j] + v.Y[j] * s.D[j];
    cross *= 2.0;  // X^T C + C^T X and the Y, D pair
    if (amplifying) cross = std::abs(cross);  // conjugation-invariant convention

    double quad = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double va_row = 0.0, ve_row = 0.0;
        for (std::size_t h = 0; h < n; ++h) {
            va_row += s.V_a(j, h) * v.X[h];
            ve_row += s.V_e(j, h) * v.Y[h];
        }
        quad += v.X[j] * va_row + v.Y[j] * ve_row;
    }
    out.var_out = fade * fade * s.V_m + fade * cross + quad;
    return out;
}

namespace {

double fit_slope(const std::vector<std::size_t>& ns, const std::vector<double>& logs) {
    const std::size_t m = ns.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = double(ns[i]);
        sx += x;
        sy += logs[i];
        sxx += x * x;
        sxy += x * logs[i];
    }
    const double denom = double(m) * sxx - sx * sx;
    return denom == 0.0 ? 0.0 : (double(m) * sxy - sx * sy) / denom;
}

}  // namespace

DecayReport forgetfulness_decay(double mu, double kappa, const ScenarioFactory& a,
                                const ScenarioFactory& b,
                                const std::vector<std::size_t>& n_range) {
    const double mk = mu * kappa;
    if (mk >= 1.0)
        throw std::domain_error(
            "forgetfulness_decay: requires mu*kappa < 1; at and above threshold memory "
            "differences are exponentially enhanced, not damped");
    if (n_range.empty()) throw std::invalid_argument("forgetfulness_decay: empty n range");

    DecayReport rep;
    rep.expected_rate_mean = 0.5 * std::log(mk);
    rep.expected_rate_var = std::log(mk);
    std::vector<std::size_t> ns_mean, ns_var;
    std::vector<double> log_mean, log_var;
    for (std::size_t n : n_range) {
        const ChannelParams p{mu, kappa, n};
        GaussianMemoryScenario sa = a(n);
        GaussianMemoryScenario sb = b(n);
        validate(sa, n);
        validate(sb, n);
        const MemoryMomentResult ra = propagate_memory_moments(sa, p);
        const MemoryMomentResult rb = propagate_memory_moments(sb, p);
        DecayRow row;
        row.n = n;
        row.delta_mean = std::abs(ra.mean_out - rb.mean_out);
        row.delta_var = std::abs(ra.var_out - rb.var_out);
        rep.rows.push_back(row);
        if (row.delta_mean > 0.0) {
            ns_mean.push_back(n);
            log_mean.push_back(std::log(row.delta_mean));
        }
        if (row.delta_var > 0.0) {
            ns_var.push_back(n);
            log_var.push_back(std::log(row.delta_var));
        }
    }
    if (ns_mean.size() >= 2) rep.fitted_rate_mean = fit_slope(ns_mean, log_mean);
    if (ns_var.size() >= 2) rep.fitted_rate_var = fit_slope(ns_var, log_var);
    return rep;
}

void write_decay_report_json(const DecayReport& r, std::ostream& os) {
    char buf[200];
    for (const DecayRow& row : r.rows) {
        std::snprintf(buf, sizeof(buf),
                      "{\"n\":%zu,\"delta_mean\":%.9g,\"delta_var\":%.9g,\"fitted_rate\":%.9g}",
                      row.n, row.delta_mean, row.delta_var, r.fitted_rate_var);
        os << buf << '\n';
    }
    std::snprintf(buf, sizeof(buf),
                  "{\"fitted_rate_mean\":%.9g,\"fitted_rate_var\":%.9g,"
                  "\"expected_rate_mean\":%.9g,\"expected_rate_var\":%.9g}",
                  r.fitted_rate_mean, r.fitted_rate_var, r.expected_rate_mean,
                  r.expected_rate_var);
    os << buf << '\n';
}

}  // namespace gmc
