// symbol.hpp — asymptotic eigenvalue symbol eta(z) of the Gram sequence and
// Szego-style averages against it.
//
//   eta(z) = (mu + kappa - 2 sqrt(mu kappa) cos(z/2))
//          / (1 + mu kappa - 2 sqrt(mu kappa) cos(z/2)),   z in [0, 2pi].
//
// Below threshold the spectrum of M^(n) converges weakly to eta(Z) with Z
// uniform; above threshold the same law describes the finite part of the
// spectrum. At mu*kappa = 1 the symbol has an integrable pole at z = 0.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gmc/quadrature.hpp"

namespace gmc {

struct AsymptoticSymbol {
    double mu = 0.0;
    double kappa = 1.0;

    double operator()(double z) const;

    double eta_min() const;
    double eta_max() const;
    bool constant() const;
    // eta is monotone in z (increasing for kappa < 1, decreasing for
    // kappa > 1); z with eta(z) = target, if attained strictly inside.
    std::optional<double> preimage_z(double target) const;
};

// Closed-form mean of eta over z: 1 - (1-mu)(1-kappa)/|1 - mu kappa|.
// Equals kappa_infinity below threshold; +infinity at threshold.
double symbol_mean(double mu, double kappa);

// (1/2pi) * integral F(eta(z)) dz. `kinks` lists eta-values where F has a
// kink; quadrature panels are split at their preimages.
QuadratureResult szego_average(const std::function<double(double)>& F, double mu, double kappa,
                               const std::vector<double>& kinks, const QuadratureSpec& spec,
                               Exec exec = Exec::Serial);

}  // namespace gmc
