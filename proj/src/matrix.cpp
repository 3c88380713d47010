#include "gmc/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gmc {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

namespace {

void check_abt_dims(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols())
        throw std::invalid_argument("product_abt: inner dimensions do not match");
}

}  // namespace

Matrix product_abt(const Matrix& a, const Matrix& b, Exec exec) {
    check_abt_dims(a, b);
    const std::size_t m = a.rows(), n = b.rows(), k = a.cols();
    Matrix c(m, n);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel && m * n > 256)
    for (long long i = 0; i < static_cast<long long>(m); ++i) {
        const double* ai = a.row_ptr(static_cast<std::size_t>(i));
        for (std::size_t j = 0; j < n; ++j)
            c(static_cast<std::size_t>(i), j) = dot_compensated(ai, b.row_ptr(j), k);
    }
    return c;
}

Matrix product_abt_serial(const Matrix& a, const Matrix& b) {
    check_abt_dims(a, b);
    const std::size_t m = a.rows(), n = b.rows(), k = a.cols();
    Matrix c(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            c(i, j) = dot_compensated(a.row_ptr(i), b.row_ptr(j), k);
    return c;
}

Matrix multiply(const Matrix& a, const Matrix& b, Exec exec) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("multiply: inner dimensions do not match");
    const std::size_t m = a.rows(), n = b.cols(), k = a.cols();
    Matrix c(m, n, 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel && m * n > 256)
    for (long long i = 0; i < static_cast<long long>(m); ++i) {
        const std::size_t ii = static_cast<std::size_t>(i);
        for (std::size_t l = 0; l < k; ++l) {
            const double ail = a(ii, l);
            if (ail == 0.0) continue;
            const double* bl = b.row_ptr(l);
            double* ci = c.row_ptr(ii);
            for (std::size_t j = 0; j < n; ++j) ci[j] += ail * bl[j];
        }
    }
    return c;
}

Matrix multiply_serial(const Matrix& a, const Matrix& b) {
    return multiply(a, b, Exec::Serial);
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

double frobenius_norm(const Matrix& a) {
    const std::size_t n = a.rows() * a.cols();
    double s = chunked_sum(n, [&](std::size_t i) {
        const double v = a.data()[i];
        return v * v;
    });
    return std::sqrt(s);
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a.data()[i]));
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

bool all_finite(const Matrix& a) {
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(a.data()[i])) return false;
    return true;
}

void write_matrix_csv(const Matrix& a, std::ostream& os) {
    char buf[40];
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", a(i, j));
            os << buf;
            if (j + 1 < a.cols()) os << ',';
        }
        os << '\n';
    }
}

Matrix read_matrix_csv(std::istream& is) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("read_matrix_csv: ragged rows");
        rows.push_back(std::move(row));
    }
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

}  // namespace gmc
