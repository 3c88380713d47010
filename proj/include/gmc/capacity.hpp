// capacity.hpp — capacity functionals of the unraveled channel.
//
// Everything is in bits per channel use. The quantum capacity integrates
// q(eta(z)) over the symbol (unbounded input energy); the classical
// capacity of the attenuator comes from water-filling the photon budget
// over the normal modes; amplifiers get a Gaussian-encoding lower bound.
// Finite-P block constructions give converging lower/upper sandwiches.

#pragma once

#include <cstddef>
#include <vector>

#include "gmc/channel.hpp"
#include "gmc/quadrature.hpp"

namespace gmc {

// max{0, log2(eta) - log2|eta - 1|}; +infinity at the eta = 1 pole.
double q_of_eta(double eta);

// (x+1) log2(x+1) - x log2(x), continuous at 0.
double g_of_x(double x);

struct EnergyConstraint {
    double N = 0.0;  // mean excitations per mode, averaged over uses
};

struct BlockBounds {
    std::size_t P = 0;
    std::vector<double> eta_lower;  // per-block infima over the n schedule
    std::vector<double> eta_upper;  // per-block suprema
    std::size_t n_used = 0;         // largest n evaluated
    bool converged = false;         // last two n changed every bound < 1e-6
};

// Sorts the n-use spectrum, partitions into P blocks of n/P, extremizes the
// per-block min/max over the schedule. P must divide every n.
BlockBounds block_bounds(const ChannelParams& p, std::size_t P,
                         const std::vector<std::size_t>& n_schedule, Exec exec = Exec::Parallel);

struct CapacityBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool converged = false;
};

// Q = (1/2pi) integral q(eta(z)) dz; rejects mu = 1 and kappa = 1 where the
// capacity diverges. Valid below, at, and above threshold (the diverging
// eigenvalue contributes nothing to q).
double quantum_capacity(double mu, double kappa, const QuadratureSpec& spec = {});

// (1/P) sum q over the block parameters; lower/upper roles swap between the
// attenuating and amplifying regimes (q is monotone the opposite way).
CapacityBounds quantum_capacity_bounds(const ChannelParams& p, std::size_t P,
                                       const std::vector<std::size_t>& n_schedule,
                                       Exec exec = Exec::Parallel);

struct WaterFillingSolution {
    double L = 0.0;                 // Lagrange multiplier
    std::vector<double> z_samples;  // sampling grid over [0, 2pi]
    std::vector<double> N_samples;  // optimal photon distribution on it
    double achieved_mean = 0.0;
    double capacity_value = 0.0;  // bits per use
};

// Attenuator classical capacity under the per-mode energy constraint:
// N(z) = 1 / (eta(z) (2^{L/eta(z)} - 1)), L solved by bracketed bisection
// against (1/2pi) integral N(z) dz = N.
WaterFillingSolution waterfill_attenuator(double mu, double kappa, double N,
                                          const QuadratureSpec& spec = {});

// Discrete per-block water-filling over the two block-parameter sets.
CapacityBounds classical_capacity_bounds_attenuator(const ChannelParams& p, std::size_t P,
                                                    const std::vector<std::size_t>& n_schedule,
                                                    double N, Exec exec = Exec::Parallel);

// The printed lower-bound formula carries g[eta(N+1)+1]; the standard
// memoryless Gaussian-encoding bound would use g[eta(N+1)-1]. Both are
// provided; PaperPlusOne is the default.
enum class AmplifierBoundVariant { PaperPlusOne, ShiftedMinusOne };

// Gaussian-encoding lower bound on the amplifier classical capacity; the
// photon distribution is clamped at zero where the unconstrained formula
// goes negative, and the constraint is solved over the clamped support.
WaterFillingSolution classical_capacity_lower_amplifier(
    double mu, double kappa, double N, const QuadratureSpec& spec = {},
    AmplifierBoundVariant variant = AmplifierBoundVariant::PaperPlusOne);

}  // namespace gmc
