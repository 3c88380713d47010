// matrix.hpp — dense row-major matrix plus the handful of products the
// channel model needs. Heavy products have OpenMP kernels with serial
// reference implementations kept for testing.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "gmc/parallel.hpp"

namespace gmc {

class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
    const double* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// C = A * B^T with compensated inner products (A: m x k, B: n x k).
Matrix product_abt(const Matrix& a, const Matrix& b, Exec exec = Exec::Parallel);
Matrix product_abt_serial(const Matrix& a, const Matrix& b);

// Plain C = A * B.
Matrix multiply(const Matrix& a, const Matrix& b, Exec exec = Exec::Parallel);
Matrix multiply_serial(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
bool all_finite(const Matrix& a);

// Row-major CSV, 17 significant digits (round-trippable).
void write_matrix_csv(const Matrix& a, std::ostream& os);
Matrix read_matrix_csv(std::istream& is);

}  // namespace gmc
