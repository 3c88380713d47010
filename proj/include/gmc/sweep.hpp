// sweep.hpp — parameter-grid evaluation behind the CLI sweep command.
// Grid points are evaluated in parallel but gathered by index, so the CSV is
// bit-stable across runs and thread counts.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gmc/quadrature.hpp"

namespace gmc {

enum class SweepQuantity {
    QuantumCapacity,
    ClassicalCapacity,      // attenuator only (kappa <= 1)
    ClassicalLowerBound,    // amplifier only (kappa > 1)
    SpectrumSummary,        // mean of the asymptotic symbol
};

struct SweepSpec {
    std::vector<double> mu_grid;
    std::vector<double> kappa_grid;
    std::optional<double> N;  // required by the classical quantities
    SweepQuantity quantity = SweepQuantity::QuantumCapacity;
};

// throws std::invalid_argument on empty/unsorted/out-of-domain grids or a
// quantity/parameter mismatch
void validate(const SweepSpec& spec);

// values in row-major (mu outer, kappa inner) order; divergent points come
// back as +infinity
std::vector<double> run_sweep(const SweepSpec& spec, const QuadratureSpec& quad = {});

// header "mu,kappa,value", 9 significant digits, "inf" literals
void write_sweep_csv(const SweepSpec& spec, const std::vector<double>& values, std::ostream& os);

// "lo:hi:count" (inclusive linspace), comma list, or a single number
std::vector<double> parse_grid(const std::string& text);

SweepQuantity parse_quantity(const std::string& name);  // qcap|ccap|clow|summary

// grids used for the capacity-map reproductions (101 points per axis, the
// divergent mu = 1 and kappa = 1 lines excluded for the quantum map)
SweepSpec default_quantum_map();
SweepSpec default_classical_map();        // attenuator panel, N = 8
SweepSpec default_classical_lower_map();  // amplifier panel, N = 8

}  // namespace gmc
