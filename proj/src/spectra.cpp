#include "gmc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace gmc {

EigenDecomposition eigen_spectrum(const GramMatrix& g, Exec exec) {
    return eigh(g.M, exec);
}

namespace {

// Normalize rows of `raw` whose expected scale is resolvable; fill the rest
// with an orthonormal completion so the factor stays row-orthonormal even
// when singular values (nearly) vanish.
Matrix orthonormal_rows(const Matrix& raw, const std::vector<double>& expected_scale) {
    const std::size_t nrows = raw.rows(), dim = raw.cols();
    double top = 0.0;
    for (double s : expected_scale) top = std::max(top, s);
    // a vanishing singular value still leaves a residual row of size
    // ~sqrt(||M|| eps); anything below this is noise and gets completed
    const double cutoff = std::max(top, 1.0) * 1e-7;

    Matrix out(nrows, dim, 0.0);
    std::vector<std::size_t> degenerate;
    for (std::size_t r = 0; r < nrows; ++r) {
        double norm2 = 0.0;
        for (std::size_t c = 0; c < dim; ++c) norm2 += raw(r, c) * raw(r, c);
        const double norm = std::sqrt(norm2);
        if (norm > cutoff) {
            for (std::size_t c = 0; c < dim; ++c) out(r, c) = raw(r, c) / norm;
        } else {
            degenerate.push_back(r);
        }
    }
    std::size_t seed = 0;
    for (std::size_t r : degenerate) {
        while (true) {
            if (seed >= dim)
                throw std::runtime_error("unravel: failed to complete an orthonormal factor");
            std::vector<double> v(dim, 0.0);
            v[seed++] = 1.0;
            for (std::size_t o = 0; o < nrows; ++o) {
                if (o == r) continue;
                double proj = 0.0;
                for (std::size_t c = 0; c < dim; ++c) proj += out(o, c) * v[c];
                for (std::size_t c = 0; c < dim; ++c) v[c] -= proj * out(o, c);
            }
            double norm2 = 0.0;
            for (double x : v) norm2 += x * x;
            if (norm2 > 0.25) {
                const double inv = 1.0 / std::sqrt(norm2);
                for (std::size_t c = 0; c < dim; ++c) out(r, c) = v[c] * inv;
                break;
            }
        }
    }
    return out;
}

}  // namespace

SpectrumDecomposition unravel(const ModeCouplingMatrices& mats, Exec exec) {
    const std::size_t n = mats.A.rows();
    const Matrix M = product_abt(mats.A, mats.A, exec);
    EigenDecomposition dec = eigh(M, exec);

    SpectrumDecomposition out;
    out.eta.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.eta[j] = std::max(0.0, dec.values[j]);
    out.O = std::move(dec.vectors);

    // rows of O^T A scale like sqrt(eta); rows of O^T E like sqrt(|eta-1|)
    const Matrix ot = transpose(out.O);
    std::vector<double> scale_a(n), scale_e(n);
    for (std::size_t j = 0; j < n; ++j) {
        scale_a[j] = std::sqrt(out.eta[j]);
        scale_e[j] = std::sqrt(std::abs(out.eta[j] - 1.0));
    }
    out.Oprime = orthonormal_rows(multiply(ot, mats.A, exec), scale_a);
    out.Odoubleprime = orthonormal_rows(multiply(ot, mats.E, exec), scale_e);
    return out;
}

ThresholdSplit threshold_split(const ChannelParams& p) {
    validate(p);
    const double mu = p.mu, k = p.kappa;
    const double mk = mu * k;
    if (mk <= 1.0)
        throw std::domain_error("threshold_split: requires mu*kappa > 1 (above threshold)");
    const std::size_t n = p.n;
    const double alpha = (k - 1.0) / std::sqrt(k * (mk - 1.0));
    const double beta = (1.0 - mu) * std::sqrt(k / (mk - 1.0));
    const double ab = alpha * beta;  // = (1-mu)(kappa-1)/(mu kappa - 1)

    const double grow = std::pow(mk, double(n));
    double c = alpha * alpha * mk * (grow - 1.0) / (mk - 1.0) +
               beta * beta * (1.0 - 1.0 / grow) / (mk - 1.0) - 2.0 * ab * double(n);
    if (!std::isfinite(c))
        throw std::runtime_error("threshold_split: diverging scale overflowed; reduce n");

    ThresholdSplit out;
    out.c = c;
    out.psi.resize(n);
    const double inv_sqrt_c = 1.0 / std::sqrt(c);
    for (std::size_t j = 1; j <= n; ++j)
        out.psi[j - 1] = (alpha * sqrt_pow(mk, double(j)) - beta * sqrt_pow(mk, -double(j))) * inv_sqrt_c;

    out.deltaM = Matrix(n, n);
    for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t h = 1; h <= j; ++h) {
            const double v = (j == h ? 1.0 : 0.0) + ab * sqrt_pow(mk, -double(j - h)) -
                             beta * beta * sqrt_pow(mk, -double(j + h));
            out.deltaM(j - 1, h - 1) = v;
            out.deltaM(h - 1, j - 1) = v;
        }
    }
    return out;
}

double threshold_tail_entry(double mu, double kappa, std::size_t d) {
    const double mk = mu * kappa;
    if (mk <= 1.0)
        throw std::domain_error("threshold_tail_entry: requires mu*kappa > 1");
    const double ab = (1.0 - mu) * (kappa - 1.0) / (mk - 1.0);
    return (d == 0 ? 1.0 : 0.0) + ab * sqrt_pow(mk, -double(d));
}

namespace {

// law of eta(Z), Z uniform on [0, 2pi]; left limit needed where the law has
// an atom (constant symbol).
double symbol_cdf(const AsymptoticSymbol& sym, double t, bool left_limit) {
    if (sym.constant()) {
        const double v = sym(kTwoPi * 0.5);
        if (left_limit) return t > v + 1e-12 ? 1.0 : 0.0;
        return t >= v - 1e-12 ? 1.0 : 0.0;
    }
    const double b = 2.0 * std::sqrt(sym.mu * sym.kappa);
    const double denom = b * (1.0 - t);
    double c;
    if (std::abs(denom) < 1e-300) {
        // t = 1 exactly: below eta==1 for kappa<1, above it for kappa>1
        c = sym.kappa < 1.0 ? -1.0 : 1.0;
    } else {
        c = (sym.mu + sym.kappa - t * (1.0 + sym.mu * sym.kappa)) / denom;
    }
    c = std::clamp(c, -1.0, 1.0);
    const double frac = 2.0 * std::acos(c) / kTwoPi;
    return sym.kappa <= 1.0 ? frac : 1.0 - frac;
}

}  // namespace

double ks_distance_to_symbol(const std::vector<double>& sorted_eta, double mu, double kappa) {
    const AsymptoticSymbol sym{mu, kappa};
    const std::size_t m = sorted_eta.size();
    if (m == 0) throw std::invalid_argument("ks_distance_to_symbol: empty spectrum");
    double d = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = sorted_eta[i];
        d = std::max(d, double(i + 1) / double(m) - symbol_cdf(sym, x, false));
        d = std::max(d, symbol_cdf(sym, x, true) - double(i) / double(m));
    }
    return d;
}

FitReport finite_spectrum_fit(double mu, double kappa, const std::vector<std::size_t>& n_list,
                              std::size_t trim_count, Exec exec) {
    if (n_list.empty()) throw std::invalid_argument("finite_spectrum_fit: empty n list");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("finite_spectrum_fit: n list must be increasing");

    FitReport report;
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t n : n_list) {
        const ChannelParams p{mu, kappa, n};
        const Regime reg = classify_regime(p);
        std::vector<double> ev = eigh_values(build_gram_matrix(p, exec).M, exec);
        std::size_t trim = 0;
        if (reg.threshold == ThresholdRegion::Above)
            trim = 1;  // the single diverging eigenvalue
        else if (reg.threshold == ThresholdRegion::At)
            trim = trim_count;
        if (trim >= ev.size())
            throw std::invalid_argument("finite_spectrum_fit: trim removes the whole spectrum");
        const double scale = std::abs(ev.back());
        ev.resize(ev.size() - trim);
        FitRow row;
        row.n = n;
        row.trimmed_count = trim;
        row.ks_distance = ks_distance_to_symbol(ev, mu, kappa);
        row.ill_conditioned = scale * eps > 1e-6;
        report.rows.push_back(row);
    }
    for (std::size_t i = 1; i < report.rows.size(); ++i)
        if (report.rows[i].ks_distance > report.rows[i - 1].ks_distance * 1.05 + 1e-4)
            report.non_increasing = false;
    return report;
}

void write_spectrum_csv(const std::vector<double>& eta, std::ostream& os) {
    char buf[40];
    os << "j,eta\n";
    for (std::size_t j = 0; j < eta.size(); ++j) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g", j + 1, eta[j]);
        os << buf << '\n';
    }
}

void write_fit_report_json(const FitReport& r, std::ostream& os) {
    char buf[160];
    for (const FitRow& row : r.rows) {
        std::snprintf(buf, sizeof(buf),
                      "{\"n\":%zu,\"ks_distance\":%.9g,\"trimmed_count\":%zu%s}", row.n,
                      row.ks_distance, row.trimmed_count,
                      row.ill_conditioned ? ",\"ill_conditioned\":true" : "");
        os << buf << '\n';
    }
}

}  // namespace gmc
