// spectra.hpp — normal-mode unraveling of the n-use channel and asymptotic
// spectrum diagnostics.
//
// The SVD A = O diag(sqrt(eta)) O' turns n correlated uses into n
// independent single-mode channels with transmissivities/gains eta_j; the
// environment factors as E = O diag(sqrt(|eta-1|)) O'' with O'' row-
// orthonormal on the (n+1)-dimensional environment (memory column included).

#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "gmc/coupling.hpp"
#include "gmc/eigensolver.hpp"
#include "gmc/gram.hpp"
#include "gmc/symbol.hpp"

namespace gmc {

struct SpectrumDecomposition {
    std::vector<double> eta;  // ascending, ties by original index
    Matrix O;                 // n x n orthogonal (output rotation)
    Matrix Oprime;            // n x n orthogonal (input rotation / encoder)
    Matrix Odoubleprime;      // n x (n+1) row-orthonormal (environment rotation)
};

// Ascending eigen-decomposition of a Gram matrix with the residual contract
// ||M v - lambda v|| <= 1e-10 ||M||.
EigenDecomposition eigen_spectrum(const GramMatrix& g, Exec exec = Exec::Parallel);

SpectrumDecomposition unravel(const ModeCouplingMatrices& mats, Exec exec = Exec::Parallel);

// Above-threshold split M = c * psi psi^T + deltaM into the diverging
// rank-one direction and a bounded remainder whose finite spectrum follows
// the symbol.
struct ThresholdSplit {
    double c = 0.0;              // diverging eigenvalue scale
    std::vector<double> psi;     // unit vector of the rank-one projector
    Matrix deltaM;               // bounded remainder
};

ThresholdSplit threshold_split(const ChannelParams& p);

// Entry of the limiting Toeplitz matrix the remainder converges to,
// at offset d = |j - j'| (deep inside the matrix, j + j' -> infinity).
double threshold_tail_entry(double mu, double kappa, std::size_t d);

// Kolmogorov-Smirnov distance between the trimmed finite spectrum of M^(n)
// and the law of eta(Z), Z uniform on [0, 2pi].
struct FitRow {
    std::size_t n = 0;
    double ks_distance = 0.0;
    std::size_t trimmed_count = 0;
    bool ill_conditioned = false;  // set when the diverging scale drowns the
                                   // finite eigenvalues in double precision
};

struct FitReport {
    std::vector<FitRow> rows;
    bool non_increasing = true;  // distances non-increasing over n (5% slack)
};

// trim_count applies at/above threshold; above threshold the default 1 drops
// the single diverging eigenvalue.
FitReport finite_spectrum_fit(double mu, double kappa, const std::vector<std::size_t>& n_list,
                              std::size_t trim_count = 1, Exec exec = Exec::Parallel);

double ks_distance_to_symbol(const std::vector<double>& sorted_eta, double mu, double kappa);

// CSV dump, header "j,eta".
void write_spectrum_csv(const std::vector<double>& eta, std::ostream& os);
// JSON lines {"n":..,"ks_distance":..,"trimmed_count":..}.
void write_fit_report_json(const FitReport& r, std::ostream& os);

}  // namespace gmc
