// eigensolver.hpp — dense symmetric eigendecomposition.
//
// eigh() reduces to tridiagonal form by Householder reflections and runs
// implicit-shift QL; the O(n^2)-per-step inner loops carry OpenMP kernels.
// eigh_jacobi() is the serial cyclic-Jacobi reference kept for testing and
// benchmarking against. Eigenvalues come back ascending, ties broken by the
// original index; eigenvectors are the matching columns.

#pragma once

#include <vector>

#include "gmc/matrix.hpp"

namespace gmc {

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column j pairs with values[j]
};

EigenDecomposition eigh(const Matrix& m, Exec exec = Exec::Parallel);
std::vector<double> eigh_values(const Matrix& m, Exec exec = Exec::Parallel);

EigenDecomposition eigh_jacobi(const Matrix& m);

// max_j ||M v_j - lambda_j v_j||_2, for contract checks.
double eigen_residual(const Matrix& m, const EigenDecomposition& d);

}  // namespace gmc
