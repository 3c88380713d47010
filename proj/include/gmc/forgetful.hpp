// forgetful.hpp — Gaussian moment propagation of the memory mode.
//
// After n uses the memory amplitude picks up sqrt(mu kappa)^n of its initial
// value plus couplings X, Y to the inputs and environments. Below threshold
// the exponential factor wipes out the initialization; the decay diagnostics
// quantify that by propagating two differently prepared scenarios.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "gmc/channel.hpp"
#include "gmc/matrix.hpp"

namespace gmc {

struct GaussianMemoryScenario {
    std::complex<double> mean_m;               // <m_1>
    std::vector<std::complex<double>> mean_a;  // <a_j>, length n
    std::vector<std::complex<double>> mean_e;  // <e_j>, length n
    double V_m = 0.5;                          // memory-mode variance
    std::vector<double> C;                     // memory-input covariances
    std::vector<double> D;                     // memory-environment covariances
    Matrix V_a;                                // n x n input covariance block
    Matrix V_e;                                // n x n environment covariance block
};

GaussianMemoryScenario vacuum_scenario(std::size_t n);
// vacuum everywhere except the memory mode, displaced by `displacement` and
// heated by `extra_variance`
GaussianMemoryScenario displaced_heated_scenario(std::size_t n, std::complex<double> displacement,
                                                 double extra_variance);

// smallest eigenvalue of the assembled (2n+1) x (2n+1) covariance
double min_covariance_eigenvalue(const GaussianMemoryScenario& s);
// throws std::invalid_argument on shape mismatch or indefiniteness
void validate(const GaussianMemoryScenario& s, std::size_t n);

// X_j and Y_j couple input j and environment j into the final memory mode;
// for kappa > 1 the input coupling acts on a_j^dag (means are conjugated).
struct MemoryCouplingVectors {
    std::vector<double> X;
    std::vector<double> Y;
};
MemoryCouplingVectors memory_coupling_vectors(const ChannelParams& p);

struct MemoryMomentResult {
    std::complex<double> mean_out;
    double var_out = 0.0;
};

MemoryMomentResult propagate_memory_moments(const GaussianMemoryScenario& s,
                                            const ChannelParams& p);

using ScenarioFactory = std::function<GaussianMemoryScenario(std::size_t n)>;

struct DecayRow {
    std::size_t n = 0;
    double delta_mean = 0.0;  // |<m'_n>_a - <m'_n>_b|
    double delta_var = 0.0;   // |V'_a - V'_b|
};

struct DecayReport {
    std::vector<DecayRow> rows;
    double fitted_rate_mean = 0.0;  // least-squares slope of ln(delta_mean)
    double fitted_rate_var = 0.0;   // least-squares slope of ln(delta_var)
    double expected_rate_mean = 0.0;  // 0.5 * ln(mu kappa)
    double expected_rate_var = 0.0;   // ln(mu kappa)
};

// Requires mu*kappa < 1: above threshold memory differences are
// exponentially enhanced instead of damped and the fit is rejected.
DecayReport forgetfulness_decay(double mu, double kappa, const ScenarioFactory& a,
                                const ScenarioFactory& b, const std::vector<std::size_t>& n_range);

// JSON lines {"n":..,"delta_mean":..,"delta_var":..,"fitted_rate":..}
void write_decay_report_json(const DecayReport& r, std::ostream& os);

}  // namespace gmc
