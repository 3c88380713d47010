#include "gmc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gmc/eigensolver.hpp"
#include "gmc/gram.hpp"
#include "gmc/symbol.hpp"

namespace gmc {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kEtaFloor = 1e-300;

double require_nonnegative(double x, const char* who) {
    if (std::isnan(x) || x < 0.0) {
        std::ostringstream msg;
        msg << who << ": argument must be nonnegative, got " << x;
        throw std::domain_error(msg.str());
    }
    return x;
}

}  // namespace

double q_of_eta(double eta) {
    require_nonnegative(eta, "q_of_eta");
    if (eta == 1.0) return std::numeric_limits<double>::infinity();
    if (eta < 1.0) {
        if (eta <= 0.0) return 0.0;
        const double v = (std::log(eta) - std::log1p(-eta)) / kLn2;
        return v > 0.0 ? v : 0.0;
    }
    return std::log1p(1.0 / (eta - 1.0)) / kLn2;  // -> 0 as eta -> infinity
}

double g_of_x(double x) {
    require_nonnegative(x, "g_of_x");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return x;
    // stable for both tiny and huge x
    return (std::log1p(x) + x * std::log1p(1.0 / x)) / kLn2;
}

// ---------------------------------------------------------------------------
// photon allocations

namespace {

// attenuator: N(eta; L) and eta*N(eta; L) = 1/(2^{L/eta} - 1)
double atten_alloc(double eta, double L) {
    if (eta <= kEtaFloor) return 0.0;
    const double d = std::expm1(L / eta * kLn2);
    if (std::isinf(d)) return 0.0;
    return 1.0 / (eta * d);
}

double atten_eta_alloc(double eta, double L) {
    if (eta <= kEtaFloor) return 0.0;
    const double d = std::expm1(L / eta * kLn2);
    if (std::isinf(d)) return 0.0;
    return 1.0 / d;
}

// amplifier: phi = eta (1 - 2^{-L/eta}) is increasing in eta; the photon
// distribution 1/phi - 1 turns negative once phi > 1 and is clamped there.
double amp_phi(double eta, double L) {
    if (eta <= kEtaFloor) return 0.0;
    return eta * (-std::expm1(-L / eta * kLn2));
}

double amp_alloc(double eta, double L) {
    const double phi = amp_phi(eta, L);
    if (phi <= 0.0) return 0.0;
    const double v = 1.0 / phi - 1.0;
    return v > 0.0 ? v : 0.0;
}

// Bracketed bisection for the Lagrange multiplier: mean_fn is strictly
// decreasing in L. Starts from [1e-12, 1] and doubles the upper end until
// the constraint integral falls below the target.
template <class MeanFn>
double solve_multiplier(MeanFn&& mean_fn, double target, double stop_rel = 1e-10,
                        double lo = 1e-12, double hi = 1.0) {
    if (mean_fn(lo) < target) {
        std::ostringstream msg;
        msg << "water-filling: constraint unreachable from bracket [" << lo << ", " << hi
            << "]; mean(" << lo << ") < " << target;
        throw std::runtime_error(msg.str());
    }
    int expand = 0;
    while (mean_fn(hi) > target) {
        hi *= 2.0;
        if (++expand > 80) {
            std::ostringstream msg;
            msg << "water-filling: failed to bracket the multiplier, endpoints [" << lo << ", "
                << hi << "]";
            throw std::runtime_error(msg.str());
        }
        lo = hi / 2.0;
    }
    while (hi - lo > stop_rel * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mean_fn(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Bisection re-evaluates the constraint integral at full resolution dozens
// of times; a coarse pass first localizes the multiplier so only the last
// few bisection steps pay for the fine quadrature.
template <class CoarseFn, class FineFn>
double solve_multiplier_staged(CoarseFn&& coarse, FineFn&& fine, double target) {
    const double l1 = solve_multiplier(coarse, target, 1e-6);
    double lo = l1 * (1.0 - 1e-4);
    double hi = l1 * (1.0 + 1e-4);
    if (fine(lo) > target && fine(hi) < target)
        return solve_multiplier(fine, target, 1e-10, lo, hi);
    return solve_multiplier(fine, target);  // coarse localization failed; full solve
}

QuadratureSpec coarse_spec(const QuadratureSpec& spec) {
    QuadratureSpec c = spec;
    c.base_points = std::max(256, spec.base_points / 8);
    c.abs_tol = std::max(1e-6, spec.abs_tol);
    return c;
}

// Uniform-midpoint cache of eta(z): water-filling re-evaluates the symbol at
// identical nodes for every multiplier trial, so the symbol values are
// computed once per refinement level.
class SymbolGrid {
  public:
    SymbolGrid(const AsymptoticSymbol& sym, const QuadratureSpec& spec)
        : sym_(sym),
          base_m_(std::max(8, spec.base_points)),
          max_level_(std::min(spec.max_refine_levels, 8)),
          tol_(spec.abs_tol) {}

    template <class F>
    QuadratureResult mean(F&& f) const {
        double prev = level_mean(0, f);
        double cur = prev;
        double err = 0.0;
        bool ok = false;
        int lev = 1;
        for (; lev <= max_level_; ++lev) {
            cur = level_mean(lev, f);
            err = std::abs(cur - prev) / 3.0;
            if (err <= tol_) {
                ok = true;
                break;
            }
            prev = cur;
        }
        QuadratureResult out;
        out.value = ok ? cur + (cur - prev) / 3.0 : cur;
        out.error_estimate = err;
        out.converged = ok;
        return out;
    }

  private:
    template <class F>
    double level_mean(int lev, F&& f) const {
        const std::vector<double>& eta = level(lev);
        const double s = chunked_sum(eta.size(), [&](std::size_t i) { return f(eta[i]); });
        return s / double(eta.size());
    }

    const std::vector<double>& level(int lev) const {
        while (static_cast<int>(levels_.size()) <= lev) {
            const std::size_t m = std::size_t(base_m_) << levels_.size();
            std::vector<double> eta(m);
            const double h = kTwoPi / double(m);
            for (std::size_t i = 0; i < m; ++i) eta[i] = sym_((double(i) + 0.5) * h);
            levels_.push_back(std::move(eta));
        }
        return levels_[std::size_t(lev)];
    }

    AsymptoticSymbol sym_;
    int base_m_;
    int max_level_;
    double tol_;
    mutable std::vector<std::vector<double>> levels_;
};

std::vector<double> sample_grid(std::size_t m) {
    std::vector<double> z(m);
    for (std::size_t i = 0; i < m; ++i) z[i] = (double(i) + 0.5) * kTwoPi / double(m);
    return z;
}

}  // namespace

// ---------------------------------------------------------------------------
// block construction

BlockBounds block_bounds(const ChannelParams& p, std::size_t P,
                         const std::vector<std::size_t>& n_schedule, Exec exec) {
    validate(p);
    if (P < 1) throw std::invalid_argument("block_bounds: P must be positive");
    if (n_schedule.empty()) throw std::invalid_argument("block_bounds: empty n schedule");
    for (std::size_t i = 0; i < n_schedule.size(); ++i) {
        if (n_schedule[i] % P != 0)
            throw std::invalid_argument("block_bounds: P must divide every n in the schedule");
        if (i > 0 && n_schedule[i] <= n_schedule[i - 1])
            throw std::invalid_argument("block_bounds: n schedule must be increasing");
    }

    BlockBounds out;
    out.P = P;
    out.eta_lower.assign(P, std::numeric_limits<double>::infinity());
    out.eta_upper.assign(P, -std::numeric_limits<double>::infinity());
    out.n_used = n_schedule.back();

    std::vector<double> last_lo(P), last_hi(P), prev_lo(P), prev_hi(P);
    for (std::size_t s = 0; s < n_schedule.size(); ++s) {
        const std::size_t n = n_schedule[s];
        ChannelParams pn = p;
        pn.n = n;
        std::vector<double> ev = eigh_values(build_gram_matrix(pn, exec).M, exec);
        const std::size_t ell = n / P;
        for (std::size_t blk = 0; blk < P; ++blk) {
            const double lo = ev[blk * ell];
            const double hi = ev[blk * ell + ell - 1];
            out.eta_lower[blk] = std::min(out.eta_lower[blk], lo);
            out.eta_upper[blk] = std::max(out.eta_upper[blk], hi);
            last_lo[blk] = lo;
            last_hi[blk] = hi;
        }
        if (s + 1 == n_schedule.size() && n_schedule.size() >= 2) {
            bool conv = true;
            for (std::size_t blk = 0; blk < P; ++blk)
                conv = conv && std::abs(last_lo[blk] - prev_lo[blk]) < 1e-6 &&
                       std::abs(last_hi[blk] - prev_hi[blk]) < 1e-6;
            out.converged = conv;
        }
        prev_lo = last_lo;
        prev_hi = last_hi;
    }
    return out;
}

// ---------------------------------------------------------------------------
// quantum capacity

double quantum_capacity(double mu, double kappa, const QuadratureSpec& spec) {
    if (!(mu >= 0.0 && mu <= 1.0) || !(kappa >= 0.0))
        throw std::domain_error("quantum_capacity: parameters out of domain");
    if (mu == 1.0 || kappa == 1.0)
        throw std::domain_error("quantum_capacity: capacity diverges at mu = 1 or kappa = 1");
    const QuadratureResult r =
        szego_average([](double eta) { return q_of_eta(eta); }, mu, kappa, {0.5}, spec);
    if (!r.converged) {
        std::ostringstream msg;
        msg << "quantum_capacity: quadrature error estimate " << r.error_estimate
            << " above tolerance " << spec.abs_tol;
        throw std::runtime_error(msg.str());
    }
    return r.value;
}

CapacityBounds quantum_capacity_bounds(const ChannelParams& p, std::size_t P,
                                       const std::vector<std::size_t>& n_schedule, Exec exec) {
    const BlockBounds bb = block_bounds(p, P, n_schedule, exec);
    double sum_lo = 0.0, sum_hi = 0.0;
    for (std::size_t blk = 0; blk < P; ++blk) {
        sum_lo += q_of_eta(std::max(0.0, bb.eta_lower[blk]));
        sum_hi += q_of_eta(std::max(0.0, bb.eta_upper[blk]));
    }
    sum_lo /= double(P);
    sum_hi /= double(P);
    CapacityBounds out;
    out.converged = bb.converged;
    if (p.kappa <= 1.0) {
        out.lower = sum_lo;  // q increasing on [0, 1)
        out.upper = sum_hi;
    } else {
        out.lower = sum_hi;  // q decreasing on (1, inf)
        out.upper = sum_lo;
    }
    return out;
}

// ---------------------------------------------------------------------------
// attenuator water-filling

WaterFillingSolution waterfill_attenuator(double mu, double kappa, double N,
                                          const QuadratureSpec& spec) {
    if (!(mu >= 0.0 && mu <= 1.0) || !(kappa >= 0.0 && kappa <= 1.0))
        throw std::domain_error("waterfill_attenuator: requires 0 <= mu <= 1 and kappa <= 1");
    if (!(N > 0.0)) throw std::domain_error("waterfill_attenuator: N must be positive");

    const AsymptoticSymbol sym{mu, kappa};
    WaterFillingSolution sol;
    sol.z_samples = sample_grid(512);
    sol.N_samples.assign(512, 0.0);

    if (sym.eta_max() <= kEtaFloor) {
        // kappa = 0, mu = 0: nothing is transmitted; the constraint is
        // inactive and any allocation works, so report a flat one.
        sol.L = 0.0;
        std::fill(sol.N_samples.begin(), sol.N_samples.end(), N);
        sol.achieved_mean = N;
        sol.capacity_value = 0.0;
        return sol;
    }

    const SymbolGrid grid(sym, spec);
    const SymbolGrid rough(sym, coarse_spec(spec));
    auto mean_of_L = [&](double L) {
        return grid.mean([L](double eta) { return atten_alloc(eta, L); }).value;
    };
    auto mean_rough = [&](double L) {
        return rough.mean([L](double eta) { return atten_alloc(eta, L); }).value;
    };
    sol.L = solve_multiplier_staged(mean_rough, mean_of_L, N);
    sol.achieved_mean = mean_of_L(sol.L);
    sol.capacity_value =
        grid.mean([&](double eta) { return g_of_x(atten_eta_alloc(eta, sol.L)); }).value;
    for (std::size_t i = 0; i < sol.z_samples.size(); ++i)
        sol.N_samples[i] = atten_alloc(sym(sol.z_samples[i]), sol.L);
    return sol;
}

namespace {

// shared by the discrete block bounds: water-fill over P equally weighted
// block parameters, return (1/P) sum g(eta_p N_p)
double discrete_waterfill_value(const std::vector<double>& etas, double N) {
    double top = 0.0;
    for (double e : etas) top = std::max(top, e);
    if (top <= kEtaFloor) return 0.0;
    auto mean_of_L = [&](double L) {
        double s = 0.0;
        for (double e : etas) s += atten_alloc(std::max(0.0, e), L);
        return s / double(etas.size());
    };
    const double L = solve_multiplier(mean_of_L, N);
    double c = 0.0;
    for (double e : etas) c += g_of_x(atten_eta_alloc(std::max(0.0, e), L));
    return c / double(etas.size());
}

}  // namespace

CapacityBounds classical_capacity_bounds_attenuator(const ChannelParams& p, std::size_t P,
                                                    const std::vector<std::size_t>& n_schedule,
                                                    double N, Exec exec) {
    if (p.kappa > 1.0)
        throw std::domain_error(
            "classical_capacity_bounds_attenuator: exact classical capacity unavailable for the "
            "amplifier (kappa > 1)");
    if (!(N > 0.0))
        throw std::domain_error("classical_capacity_bounds_attenuator: N must be positive");
    const BlockBounds bb = block_bounds(p, P, n_schedule, exec);
    CapacityBounds out;
    out.lower = discrete_waterfill_value(bb.eta_lower, N);
    out.upper = discrete_waterfill_value(bb.eta_upper, N);
    out.converged = bb.converged;
    return out;
}

// ---------------------------------------------------------------------------
// amplifier lower bound

WaterFillingSolution classical_capacity_lower_amplifier(double mu, double kappa, double N,
                                                        const QuadratureSpec& spec,
                                                        AmplifierBoundVariant variant) {
    if (!(mu >= 0.0 && mu <= 1.0) || !(kappa > 1.0))
        throw std::domain_error("classical_capacity_lower_amplifier: requires kappa > 1");
    if (!(N > 0.0))
        throw std::domain_error("classical_capacity_lower_amplifier: N must be positive");

    const AsymptoticSymbol sym{mu, kappa};
    const SymbolGrid grid(sym, spec);
    const SymbolGrid rough(sym, coarse_spec(spec));
    const double eta_lo = sym.eta_min();
    const double eta_hi = sym.eta_max();  // may be +inf at threshold

    // z of the clamp boundary N(z) = 0, if it cuts the range at this L
    auto clamp_break = [&](double L) -> std::optional<double> {
        if (amp_phi(eta_lo, L) >= 1.0) return std::nullopt;  // fully clamped
        const double hi_probe = std::isinf(eta_hi) ? 1e12 : eta_hi;
        if (amp_phi(hi_probe, L) <= 1.0) return std::nullopt;  // nowhere clamped
        double a = eta_lo, b = hi_probe;
        for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, b); ++it) {
            const double mid = 0.5 * (a + b);
            (amp_phi(mid, L) < 1.0 ? a : b) = mid;
        }
        return sym.preimage_z(0.5 * (a + b));
    };

    auto mean_with = [&](double L, const SymbolGrid& g, const QuadratureSpec& q) {
        if (amp_phi(eta_lo, L) >= 1.0) return 0.0;  // phi increasing: whole range clamped
        if (const auto brk = clamp_break(L)) {
            std::vector<double> breaks{*brk};
            return integrate_mean([&](double z) { return amp_alloc(sym(z), L); }, breaks, q)
                .value;
        }
        return g.mean([L](double eta) { return amp_alloc(eta, L); }).value;
    };
    auto mean_of_L = [&](double L) { return mean_with(L, grid, spec); };
    auto mean_rough = [&](double L) { return mean_with(L, rough, coarse_spec(spec)); };

    WaterFillingSolution sol;
    sol.L = solve_multiplier_staged(mean_rough, mean_of_L, N);
    sol.achieved_mean = mean_of_L(sol.L);

    const double offset = variant == AmplifierBoundVariant::PaperPlusOne ? 1.0 : -1.0;
    auto integrand = [&](double eta) {
        if (std::isinf(eta)) {
            // symbol pole at threshold: N stays finite, the two entropies
            // differ by log2 of the photon ratio
            const double nz = amp_alloc(1e300, sol.L);
            return std::log2(nz + 1.0);
        }
        const double nz = amp_alloc(eta, sol.L);
        return g_of_x(std::max(0.0, eta * (nz + 1.0) + offset)) - g_of_x(eta - 1.0);
    };
    if (const auto brk = clamp_break(sol.L)) {
        std::vector<double> breaks{*brk};
        sol.capacity_value =
            integrate_mean([&](double z) { return integrand(sym(z)); }, breaks, spec).value;
    } else {
        sol.capacity_value = grid.mean(integrand).value;
    }
    sol.z_samples = sample_grid(512);
    sol.N_samples.resize(512);
    for (std::size_t i = 0; i < sol.z_samples.size(); ++i)
        sol.N_samples[i] = amp_alloc(sym(sol.z_samples[i]), sol.L);
    return sol;
}

}  // namespace gmc
