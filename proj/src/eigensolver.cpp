#include "gmc/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gmc/parallel.hpp"

namespace gmc {

namespace {

void check_square_symmetric(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigh: matrix must be square");
    if (m.rows() == 0) throw std::invalid_argument("eigh: matrix must be nonempty");
}

// Householder reduction to tridiagonal form. The active block is kept fully
// symmetric so every inner loop walks rows contiguously. On exit d holds the
// diagonal and e[1..n-1] the subdiagonal; with_vectors accumulates the
// orthogonal similarity into z (columns).
void householder_tridiag(Matrix& z, std::vector<double>& d, std::vector<double>& e,
                         bool with_vectors, Exec exec) {
    const int n = static_cast<int>(z.rows());
    for (int i = n - 1; i > 0; --i) {
        const int l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (int k = 0; k <= l; ++k) scale += std::abs(z(i, k));
            if (scale == 0.0) {
                e[i] = z(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    z(i, k) /= scale;
                    h += z(i, k) * z(i, k);
                }
                double f = z(i, l);
                const double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                z(i, l) = f - g;
                const double inv_h = 1.0 / h;
                const double* u = z.row_ptr(i);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel && l > 127)
                for (int j = 0; j <= l; ++j) {
                    if (with_vectors) z(j, i) = u[j] * inv_h;
                    const double* rowj = z.row_ptr(j);
                    double gg = 0.0;
                    for (int k = 0; k <= l; ++k) gg += rowj[k] * u[k];
                    e[j] = gg * inv_h;
                }
                f = 0.0;
                for (int j = 0; j <= l; ++j) f += e[j] * u[j];
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) e[j] -= hh * u[j];
                // rank-2 update A -= u q^T + q u^T over the full block
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel && l > 127)
                for (int k = 0; k <= l; ++k) {
                    const double uk = u[k];
                    const double qk = e[k];
                    double* rowk = z.row_ptr(k);
                    for (int j = 0; j <= l; ++j) rowk[j] -= uk * e[j] + qk * u[j];
                }
            }
        } else {
            e[i] = z(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    if (!with_vectors) {
        for (int i = 0; i < n; ++i) d[i] = z(i, i);
        return;
    }
    std::vector<double> g(n);
    std::vector<double> partial;
    for (int i = 0; i < n; ++i) {
        const int l = i - 1;
        if (d[i] != 0.0) {
            // g = Q_block^T u as a row-walking vector-matrix product,
            // accumulated in fixed chunks so the result is thread-count
            // independent
            const int cols = l + 1;
            constexpr int kChunk = 128;
            const int nchunk = (cols + kChunk - 1) / kChunk;
            partial.assign(std::size_t(nchunk) * cols, 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel && l > 127)
            for (int c = 0; c < nchunk; ++c) {
                double* part = partial.data() + std::size_t(c) * cols;
                const int k0 = c * kChunk;
                const int k1 = std::min(cols, k0 + kChunk);
                for (int k = k0; k < k1; ++k) {
                    const double uik = z(i, k);
                    if (uik == 0.0) continue;
                    const double* rowk = z.row_ptr(k);
                    for (int j = 0; j < cols; ++j) part[j] += uik * rowk[j];
                }
            }
            std::fill(g.begin(), g.begin() + cols, 0.0);
            for (int c = 0; c < nchunk; ++c) {
                const double* part = partial.data() + std::size_t(c) * cols;
                for (int j = 0; j < cols; ++j) g[j] += part[j];
            }
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel && l > 127)
            for (int k = 0; k <= l; ++k) {
                const double zki = z(k, i);
                if (zki == 0.0) continue;
                double* rowk = z.row_ptr(k);
                for (int j = 0; j < cols; ++j) rowk[j] -= g[j] * zki;
            }
        }
        d[i] = z(i, i);
        z(i, i) = 1.0;
        for (int j = 0; j <= l; ++j) {
            z(j, i) = 0.0;
            z(i, j) = 0.0;
        }
    }
}

// Implicit-shift QL on the tridiagonal (d, e). Plane rotations are applied
// to the ROWS of zt (the transposed accumulation), which keeps them
// contiguous; zt row r ends up holding the eigenvector of d[r].
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Matrix* zt) {
    const int n = static_cast<int>(d.size());
    const double eps = std::numeric_limits<double>::epsilon();
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) {
                    std::ostringstream msg;
                    msg << "eigh: QL failed to converge at index " << l
                        << "; remaining off-diagonal " << std::abs(e[l]);
                    throw std::runtime_error(msg.str());
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (zt) {
                        double* hi = zt->row_ptr(std::size_t(i) + 1);
                        double* lo = zt->row_ptr(std::size_t(i));
                        for (int k = 0; k < n; ++k) {
                            const double fk = hi[k];
                            hi[k] = s * lo[k] + c * fk;
                            lo[k] = c * lo[k] - s * fk;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

std::vector<std::size_t> ascending_order(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    return idx;
}

// eigenvectors arrive as rows of zt; emit them as columns, ascending
EigenDecomposition sorted_result_rows(std::vector<double>& d, const Matrix& zt) {
    const std::size_t n = d.size();
    const auto idx = ascending_order(d);
    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = d[idx[j]];
        const double* row = zt.row_ptr(idx[j]);
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = row[k];
    }
    return out;
}

}  // namespace

EigenDecomposition eigh(const Matrix& m, Exec exec) {
    check_square_symmetric(m);
    const std::size_t n = m.rows();
    Matrix z = m;
    std::vector<double> d(n), e(n);
    householder_tridiag(z, d, e, true, exec);
    Matrix zt = transpose(z);
    ql_implicit(d, e, &zt);
    return sorted_result_rows(d, zt);
}

std::vector<double> eigh_values(const Matrix& m, Exec exec) {
    check_square_symmetric(m);
    const std::size_t n = m.rows();
    Matrix z = m;
    std::vector<double> d(n), e(n);
    householder_tridiag(z, d, e, false, exec);
    ql_implicit(d, e, nullptr);
    std::sort(d.begin(), d.end());
    return d;
}

EigenDecomposition eigh_jacobi(const Matrix& m) {
    check_square_symmetric(m);
    const int n = static_cast<int>(m.rows());
    Matrix a = m;
    Matrix vt = Matrix::identity(m.rows());  // rows accumulate the eigenvectors
    std::vector<double> d(m.rows());
    for (int i = 0; i < n; ++i) d[i] = a(i, i);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off += std::abs(a(p, q));
        if (off == 0.0) {
            std::vector<double> dd = d;
            return sorted_result_rows(dd, vt);
        }
        const double thresh = sweep < 3 ? 0.2 * off / (double(n) * double(n)) : 0.0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                const double small = 100.0 * std::abs(apq);
                if (sweep > 3 && std::abs(d[p]) + small == std::abs(d[p]) &&
                    std::abs(d[q]) + small == std::abs(d[q])) {
                    a(p, q) = 0.0;
                    continue;
                }
                if (std::abs(apq) <= thresh) continue;
                double t;
                const double h = d[q] - d[p];
                if (std::abs(h) + small == std::abs(h)) {
                    t = apq / h;
                } else {
                    const double theta = 0.5 * h / apq;
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double change = t * apq;
                d[p] -= change;
                d[q] += change;
                a(p, q) = 0.0;
                auto rotate = [&](double& x, double& y) {
                    const double gx = x, hy = y;
                    x = gx - s * (hy + gx * tau);
                    y = hy + s * (gx - hy * tau);
                };
                for (int j = 0; j < p; ++j) rotate(a(j, p), a(j, q));
                for (int j = p + 1; j < q; ++j) rotate(a(p, j), a(j, q));
                for (int j = q + 1; j < n; ++j) rotate(a(p, j), a(q, j));
                for (int j = 0; j < n; ++j) rotate(vt(p, j), vt(q, j));
            }
        }
    }
    throw std::runtime_error("eigh_jacobi: no convergence within 100 sweeps");
}

double eigen_residual(const Matrix& m, const EigenDecomposition& d) {
    const std::size_t n = m.rows();
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            double mv = 0.0;
            for (std::size_t k = 0; k < n; ++k) mv += m(r, k) * d.vectors(k, j);
            const double res = mv - d.values[j] * d.vectors(r, j);
            norm2 += res * res;
        }
        worst = std::max(worst, std::sqrt(norm2));
    }
    return worst;
}

}  // namespace gmc
