// gram.hpp — closed-form Gram matrix M = A A^T of the n-use channel.
//
// Its eigenvalues are the effective single-mode transmissivities/gains of
// the unraveled channel. Built entrywise from the closed form; away from
// mu*kappa = 1 the geometric-sum expression is used, at threshold the
// dedicated linear-growth form.

#pragma once

#include "gmc/channel.hpp"
#include "gmc/matrix.hpp"

namespace gmc {

struct GramMatrix {
    Matrix M;  // n x n symmetric positive semidefinite
    ChannelParams params;
};

GramMatrix build_gram_matrix(const ChannelParams& p, Exec exec = Exec::Parallel);
GramMatrix build_gram_matrix_serial(const ChannelParams& p);

// Limit of the diagonal kappa_jj for min{j,j'} -> infinity (finite below
// threshold only): kappa + mu (kappa-1)^2 / (1 - mu kappa).
double kappa_infinity(double mu, double kappa);

// Single entry (1-based indices), exposed for oracle-style comparisons.
double gram_entry(const ChannelParams& p, std::size_t j, std::size_t h);

}  // namespace gmc
