#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "gmc/forgetful.hpp"

using namespace gmc;

namespace {
ScenarioFactory vacuum_factory() {
    return [](std::size_t n) { return vacuum_scenario(n); };
}
ScenarioFactory heated_factory(std::complex<double> disp, double heat) {
    return [=](std::size_t n) { return displaced_heated_scenario(n, disp, heat); };
}
}  // namespace

TEST_CASE("memory coupling vectors: frozen example at mu = kappa = 0.5, n = 3") {
    const auto v = memory_coupling_vectors({0.5, 0.5, 3});
    CHECK(v.X[0] == doctest::Approx(0.25 * std::sqrt(0.5)).epsilon(1e-14));
    CHECK(v.X[1] == doctest::Approx(0.5 * std::sqrt(0.5)).epsilon(1e-14));
    CHECK(v.X[2] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    // Y scale is sqrt((1-mu)kappa) = 0.5
    CHECK(v.Y[0] == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(v.Y[1] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(v.Y[2] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("memory coupling vectors: memoryless and noiseless limits") {
    const auto v0 = memory_coupling_vectors({0.0, 0.5, 4});
    for (std::size_t j = 0; j + 1 < 4; ++j) CHECK(v0.X[j] == 0.0);
    CHECK(v0.X[3] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

    const auto v1 = memory_coupling_vectors({0.6, 1.0, 4});
    for (double x : v1.X) CHECK(x == 0.0);
}

TEST_CASE("vacuum scenario propagates to zero mean") {
    const ChannelParams p{0.5, 0.5, 6};
    const auto r = propagate_memory_moments(vacuum_scenario(6), p);
    CHECK(std::abs(r.mean_out) == 0.0);
    CHECK(r.var_out >= 0.0);
}

TEST_CASE("displaced memory mean decays like sqrt(mu kappa)^n") {
    const ChannelParams p{0.5, 0.5, 10};  // mu kappa = 0.25
    const auto r = propagate_memory_moments(displaced_heated_scenario(10, {1.0, 0.0}, 0.0), p);
    const auto rv = propagate_memory_moments(vacuum_scenario(10), p);
    CHECK(std::abs(r.mean_out - rv.mean_out) == doctest::Approx(9.765625e-4).epsilon(1e-12));
}

TEST_CASE("mean propagation is linear in the input means") {
    const ChannelParams p{0.4, 0.8, 5};
    auto a = vacuum_scenario(5);
    auto b = vacuum_scenario(5);
    b.mean_m = {0.7, -0.3};
    b.mean_a[2] = {0.1, 0.2};
    auto c = vacuum_scenario(5);
    c.mean_m = 2.0 * b.mean_m;
    c.mean_a[2] = 2.0 * b.mean_a[2];
    const auto ra = propagate_memory_moments(a, p);
    const auto rb = propagate_memory_moments(b, p);
    const auto rc = propagate_memory_moments(c, p);
    CHECK(std::abs(rc.mean_out - 2.0 * rb.mean_out + ra.mean_out) < 1e-14);
}

TEST_CASE("variance difference scales exactly as (mu kappa)^n") {
    const double mk = 0.25;
    for (std::size_t n : {std::size_t(5), std::size_t(10), std::size_t(20)}) {
        const ChannelParams p{0.5, 0.5, n};
        const auto hot = propagate_memory_moments(displaced_heated_scenario(n, 0.0, 1.0), p);
        const auto cold = propagate_memory_moments(vacuum_scenario(n), p);
        CHECK(hot.var_out - cold.var_out ==
              doctest::Approx(std::pow(mk, double(n))).epsilon(1e-12));
    }
}

TEST_CASE("amplifier branch conjugates the input means") {
    const ChannelParams p{0.5, 2.0, 3};
    auto s = vacuum_scenario(3);
    s.mean_a[1] = {0.0, 1.0};  // purely imaginary
    const auto r = propagate_memory_moments(s, p);
    // X^T conj(a): the imaginary part flips sign relative to the attenuator
    CHECK(r.mean_out.imag() < 0.0);
}

TEST_CASE("scenario validation catches shape and definiteness errors") {
    const ChannelParams p{0.5, 0.5, 4};
    auto s = vacuum_scenario(3);
    CHECK_THROWS_AS(propagate_memory_moments(s, p), std::invalid_argument);

    auto bad = vacuum_scenario(4);
    bad.C[0] = 10.0;  // memory-input correlation far beyond the variances
    CHECK(min_covariance_eigenvalue(bad) < -1e-10);
    CHECK_THROWS_AS(validate(bad, 4), std::invalid_argument);
    CHECK_NOTHROW(validate(vacuum_scenario(4), 4));
}

TEST_CASE("decay report: identical scenarios give zero distance") {
    const auto rep =
        forgetfulness_decay(0.5, 0.5, vacuum_factory(), vacuum_factory(), {1, 2, 3, 4});
    for (const auto& row : rep.rows) {
        CHECK(row.delta_mean == 0.0);
        CHECK(row.delta_var == 0.0);
    }
}

TEST_CASE("decay report: fitted rates match the threshold product") {
    for (auto [mu, k] : {std::pair{0.5, 0.5}, {0.5, 1.0}, {0.9, 0.9}}) {
        std::vector<std::size_t> ns;
        for (std::size_t n = 1; n <= 30; ++n) ns.push_back(n);
        const auto rep =
            forgetfulness_decay(mu, k, vacuum_factory(), heated_factory({1.0, 0.0}, 1.0), ns);
        const double mk = mu * k;
        CAPTURE(mu);
        CAPTURE(k);
        CHECK(std::abs(rep.fitted_rate_var - std::log(mk)) < 0.05 * std::abs(std::log(mk)));
        CHECK(std::abs(rep.fitted_rate_mean - 0.5 * std::log(mk)) <
              0.05 * std::abs(0.5 * std::log(mk)));
    }
}

TEST_CASE("decay rejects at and above threshold") {
    CHECK_THROWS_AS(
        forgetfulness_decay(0.9, 1.6, vacuum_factory(), vacuum_factory(), {1, 2}),
        std::domain_error);
    CHECK_THROWS_AS(
        forgetfulness_decay(0.5, 2.0, vacuum_factory(), vacuum_factory(), {1, 2}),
        std::domain_error);
}

TEST_CASE("mu = 0 wipes the memory immediately") {
    const auto rep = forgetfulness_decay(0.0, 0.5, vacuum_factory(),
                                         heated_factory({2.0, 1.0}, 3.0), {1, 2, 5});
    for (const auto& row : rep.rows) {
        CHECK(row.delta_mean == 0.0);
        CHECK(row.delta_var == 0.0);
    }
}

TEST_CASE("decay report JSON schema") {
    const auto rep = forgetfulness_decay(0.5, 0.5, vacuum_factory(),
                                         heated_factory({1.0, 0.0}, 1.0), {1, 2});
    std::stringstream ss;
    write_decay_report_json(rep, ss);
    std::string line;
    std::getline(ss, line);
    CHECK(line.find("\"n\":1") != std::string::npos);
    CHECK(line.find("\"delta_mean\":0.5") != std::string::npos);
    CHECK(line.find("\"delta_var\":0.25") != std::string::npos);
    CHECK(line.find("\"fitted_rate\":") != std::string::npos);
}

TEST_CASE("bounded input energy keeps output moments bounded uniformly in n") {
    // unit displacement on every input mode: mean energy per mode stays 1
    auto displaced_inputs = [](std::size_t n) {
        auto s = vacuum_scenario(n);
        for (auto& a : s.mean_a) a = 1.0;
        return s;
    };
    const ChannelParams base{0.5, 0.5, 1};
    const double geo_cap = std::sqrt(1.0 - base.kappa) / (1.0 - std::sqrt(0.25)) + 1.0;
    for (std::size_t n : {std::size_t(10), std::size_t(100), std::size_t(1000)}) {
        const ChannelParams p{base.mu, base.kappa, n};
        const auto r = propagate_memory_moments(displaced_inputs(n), p);
        CHECK(std::abs(r.mean_out) < geo_cap);
        CHECK(r.var_out < 10.0);
        CHECK(r.var_out >= -1e-12);
    }
}
