#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "gmc/coupling.hpp"
#include "gmc/gram.hpp"
#include "oracles.hpp"

using namespace gmc;

TEST_CASE("n = 1 Gram matrix is [kappa]") {
    for (double k : {0.0, 0.5, 1.0, 2.0}) {
        const auto g = build_gram_matrix({0.4, k, 1});
        CHECK(g.M(0, 0) == doctest::Approx(k).epsilon(1e-14));
    }
}

TEST_CASE("n = 2 frozen values at mu = kappa = 0.5") {
    const auto g = build_gram_matrix({0.5, 0.5, 2});
    CHECK(g.M(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(g.M(0, 1) == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(g.M(1, 0) == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(g.M(1, 1) == doctest::Approx(0.625).epsilon(1e-14));
}

TEST_CASE("closed form equals A A^T from the iterated relations") {
    for (auto [mu, k] : {std::pair{0.5, 0.5}, {0.3, 0.9}, {0.9, 1.5}, {0.5, 2.0},
                         {0.0, 0.7}, {1.0, 0.4}, {0.7, 1.0}}) {
        const ChannelParams p{mu, k, 24};
        const auto oracle = testing::iterate_coupling(p);
        const Matrix aat = product_abt(oracle.A, oracle.A, Exec::Serial);
        const auto g = build_gram_matrix(p);
        CAPTURE(mu);
        CAPTURE(k);
        double diff = 0.0;
        for (std::size_t i = 0; i < 24; ++i)
            for (std::size_t j = 0; j < 24; ++j) diff = std::max(diff, std::abs(aat(i, j) - g.M(i, j)));
        const double rel = diff * 24.0 / std::max(1e-300, frobenius_norm(g.M));
        CHECK(rel < 1e-10);
    }
}

TEST_CASE("threshold form agrees with the geometric form approached from kappa = 1/mu") {
    // the mu*kappa -> 1 limit of the general entry is the linear-growth form
    const ChannelParams at{0.5, 2.0, 6};
    const auto g_at = build_gram_matrix(at);
    // frozen 2x2 threshold values
    CHECK(g_at.M(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(g_at.M(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g_at.M(1, 1) == doctest::Approx(2.5).epsilon(1e-14));

    for (double eps : {1e-6, 1e-8}) {
        const ChannelParams near{0.5, (1.0 + eps) / 0.5, 6};
        const auto g_near = build_gram_matrix(near);
        CHECK(max_abs_diff(g_at.M, g_near.M) < 50.0 * eps);
    }
    // and the oracle route at the exact threshold point
    const auto oracle = testing::iterate_coupling(at);
    const Matrix aat = product_abt(oracle.A, oracle.A, Exec::Serial);
    CHECK(max_abs_diff(aat, g_at.M) < 1e-12);
}

TEST_CASE("mu = 1, kappa = 1 gives the identity") {
    const auto g = build_gram_matrix({1.0, 1.0, 5});
    CHECK(max_abs_diff(g.M, Matrix::identity(5)) < 1e-14);
}

TEST_CASE("trace(M)/n increases towards kappa_infinity below threshold") {
    const double mu = 0.5, k = 0.5;
    const double limit = kappa_infinity(mu, k);
    CHECK(limit == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    double prev = -1.0;
    for (std::size_t n : {std::size_t(4), std::size_t(16), std::size_t(64), std::size_t(256)}) {
        const auto g = build_gram_matrix({mu, k, n});
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += g.M(i, i);
        const double avg = tr / double(n);
        CHECK(avg > prev);
        CHECK(avg < limit);
        prev = avg;
    }
    CHECK(limit - prev < 2e-3);
}

TEST_CASE("kappa_infinity rejects at/above threshold") {
    CHECK_THROWS_AS(kappa_infinity(0.5, 2.0), std::domain_error);
    CHECK_THROWS_AS(kappa_infinity(0.9, 1.5), std::domain_error);
}

TEST_CASE("gram build matches between serial and parallel paths") {
    const ChannelParams p{0.8, 1.1, 96};
    CHECK(max_abs_diff(build_gram_matrix(p).M, build_gram_matrix_serial(p).M) == 0.0);
}
