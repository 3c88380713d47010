// coupling.hpp — exact n-use input/environment coupling matrices.
//
// b_j = sum_h A[j][h] a_h -/+ sum_h E[j][h] e_h(^dag), where column 0 of E is
// the initial memory mode (e_0 := m_1). E is stored with positive entries;
// for the attenuator the physical sign of the environment term is a minus,
// which drops out of every E E^T the rest of the library consumes.

#pragma once

#include "gmc/channel.hpp"
#include "gmc/matrix.hpp"

namespace gmc {

struct ModeCouplingMatrices {
    Matrix A;  // n x n, lower triangular, diagonal sqrt(kappa)
    Matrix E;  // n x (n+1), E[j][h] = 0 for h > j+0 (with the memory column at 0)
    ChannelParams params;
};

ModeCouplingMatrices build_coupling_matrices(const ChannelParams& p, Exec exec = Exec::Parallel);
ModeCouplingMatrices build_coupling_matrices_serial(const ChannelParams& p);

// max-abs entry of A A^T +/- E E^T - I (sign chosen by regime); the exact
// relations make this zero, so it measures commutation preservation.
double commutation_residual(const ModeCouplingMatrices& m);

// sqrt(base)^k, evaluated in log space so large above-threshold powers do not
// lose accuracy to repeated multiplication.
double sqrt_pow(double base, double k);

}  // namespace gmc
