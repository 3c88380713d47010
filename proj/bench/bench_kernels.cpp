// bench_kernels — times the OpenMP kernels against their serial reference
// implementations and checks they agree.
//
//   usage: gmc_bench [n_gram] [n_eigh]

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include <omp.h>

#include "gmc/capacity.hpp"
#include "gmc/coupling.hpp"
#include "gmc/eigensolver.hpp"
#include "gmc/gram.hpp"
#include "gmc/quadrature.hpp"
#include "gmc/symbol.hpp"

namespace {

template <class F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = omp_get_wtime();
        f();
        best = std::min(best, omp_get_wtime() - t0);
    }
    return best;
}

void report(const char* name, std::size_t n, double serial_s, double parallel_s, double diff) {
    std::printf("%-28s n=%5zu  serial %9.3f ms  parallel %9.3f ms  speedup %5.2fx  max|diff| %.3g\n",
                name, n, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s, diff);
}

gmc::Matrix random_symmetric(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    gmc::Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = dist(rng);
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n_gram = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 1024;
    const std::size_t n_eigh = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 384;
    std::printf("threads available: %d\n\n", omp_get_max_threads());

    const gmc::ChannelParams p{0.5, 0.5, n_gram};

    // gram build
    {
        gmc::GramMatrix gs, gp;
        const double ts = time_best_of(3, [&] { gs = gmc::build_gram_matrix_serial(p); });
        const double tp = time_best_of(3, [&] { gp = gmc::build_gram_matrix(p); });
        report("gram build", n_gram, ts, tp, gmc::max_abs_diff(gs.M, gp.M));
    }

    // coupling matrices + A A^T product
    {
        const auto mats = gmc::build_coupling_matrices(p);
        gmc::Matrix ms, mp;
        const double ts = time_best_of(3, [&] { ms = gmc::product_abt_serial(mats.A, mats.A); });
        const double tp = time_best_of(3, [&] { mp = gmc::product_abt(mats.A, mats.A); });
        report("A*A^T (compensated)", n_gram, ts, tp, gmc::max_abs_diff(ms, mp));
    }

    // eigensolver: serial Jacobi reference vs Householder-QL kernel
    {
        const gmc::Matrix m = random_symmetric(n_eigh, 7);
        gmc::EigenDecomposition dj, dq;
        const double ts = time_best_of(1, [&] { dj = gmc::eigh_jacobi(m); });
        const double tp = time_best_of(1, [&] { dq = gmc::eigh(m); });
        double diff = 0.0;
        for (std::size_t i = 0; i < dj.values.size(); ++i)
            diff = std::max(diff, std::abs(dj.values[i] - dq.values[i]));
        report("eigh (jacobi vs QL)", n_eigh, ts, tp, diff);
    }

    // Householder-QL with 1 thread vs all threads
    {
        const gmc::Matrix m = random_symmetric(2 * n_eigh, 11);
        gmc::EigenDecomposition d1, dp;
        const double ts = time_best_of(1, [&] { d1 = gmc::eigh(m, gmc::Exec::Serial); });
        const double tp = time_best_of(1, [&] { dp = gmc::eigh(m); });
        double diff = 0.0;
        for (std::size_t i = 0; i < d1.values.size(); ++i)
            diff = std::max(diff, std::abs(d1.values[i] - dp.values[i]));
        report("eigh QL (1 vs all threads)", 2 * n_eigh, ts, tp, diff);
    }

    // quadrature of the capacity integrand
    {
        const gmc::AsymptoticSymbol sym{0.5, 0.5};
        gmc::QuadratureSpec spec;
        spec.base_points = 1 << 20;
        auto f = [&](double z) { return gmc::q_of_eta(sym(z)); };
        gmc::QuadratureResult rs, rp;
        const double ts =
            time_best_of(3, [&] { rs = gmc::integrate_mean(f, {}, spec, gmc::Exec::Serial); });
        const double tp =
            time_best_of(3, [&] { rp = gmc::integrate_mean(f, {}, spec, gmc::Exec::Parallel); });
        report("quadrature q(eta(z))", std::size_t(spec.base_points), ts, tp,
               std::abs(rs.value - rp.value));
    }

    return 0;
}
