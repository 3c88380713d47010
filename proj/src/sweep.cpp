#include "gmc/sweep.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gmc/capacity.hpp"
#include "gmc/io.hpp"
#include "gmc/symbol.hpp"

namespace gmc {

namespace {

bool sorted_strict(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

bool is_one(double x) { return std::abs(x - 1.0) <= 1e-15; }

double evaluate_point(const SweepSpec& spec, double mu, double kappa,
                      const QuadratureSpec& quad) {
    switch (spec.quantity) {
        case SweepQuantity::QuantumCapacity:
            if (is_one(mu) || is_one(kappa)) return std::numeric_limits<double>::infinity();
            return quantum_capacity(mu, kappa, quad);
        case SweepQuantity::ClassicalCapacity:
            return waterfill_attenuator(mu, kappa, *spec.N, quad).capacity_value;
        case SweepQuantity::ClassicalLowerBound:
            return classical_capacity_lower_amplifier(mu, kappa, *spec.N, quad).capacity_value;
        default:
            return symbol_mean(mu, kappa);
    }
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count == 0) throw std::invalid_argument("grid: count must be positive");
    std::vector<double> g(count);
    if (count == 1) {
        g[0] = lo;
        return g;
    }
    const double step = (hi - lo) / double(count - 1);
    for (std::size_t i = 0; i < count; ++i) g[i] = lo + step * double(i);
    g.back() = hi;
    return g;
}

}  // namespace

void validate(const SweepSpec& spec) {
    if (spec.mu_grid.empty() || spec.kappa_grid.empty())
        throw std::invalid_argument("sweep: grids must be non-empty");
    if (!sorted_strict(spec.mu_grid) || !sorted_strict(spec.kappa_grid))
        throw std::invalid_argument("sweep: grids must be strictly increasing");
    if (spec.mu_grid.front() < 0.0 || spec.mu_grid.back() > 1.0)
        throw std::invalid_argument("sweep: mu grid must lie in [0, 1]");
    if (spec.kappa_grid.front() < 0.0)
        throw std::invalid_argument("sweep: kappa grid must be nonnegative");
    const bool classical = spec.quantity == SweepQuantity::ClassicalCapacity ||
                           spec.quantity == SweepQuantity::ClassicalLowerBound;
    if (classical) {
        if (!spec.N || !(*spec.N > 0.0))
            throw std::invalid_argument("sweep: classical quantities need --mean-photon > 0");
    }
    if (spec.quantity == SweepQuantity::ClassicalCapacity && spec.kappa_grid.back() > 1.0)
        throw std::invalid_argument("sweep: classical capacity requires kappa <= 1 everywhere");
    if (spec.quantity == SweepQuantity::ClassicalLowerBound && !(spec.kappa_grid.front() > 1.0))
        throw std::invalid_argument(
            "sweep: the amplifier lower bound requires kappa > 1 everywhere");
}

std::vector<double> run_sweep(const SweepSpec& spec, const QuadratureSpec& quad) {
    validate(spec);
    const std::size_t nm = spec.mu_grid.size(), nk = spec.kappa_grid.size();
    std::vector<double> values(nm * nk);
#pragma omp parallel for schedule(dynamic)
    for (long long idx = 0; idx < static_cast<long long>(nm * nk); ++idx) {
        const std::size_t i = static_cast<std::size_t>(idx) / nk;
        const std::size_t j = static_cast<std::size_t>(idx) % nk;
        values[static_cast<std::size_t>(idx)] =
            evaluate_point(spec, spec.mu_grid[i], spec.kappa_grid[j], quad);
    }
    return values;
}

void write_sweep_csv(const SweepSpec& spec, const std::vector<double>& values, std::ostream& os) {
    os << "mu,kappa,value\n";
    const std::size_t nk = spec.kappa_grid.size();
    for (std::size_t i = 0; i < spec.mu_grid.size(); ++i)
        for (std::size_t j = 0; j < nk; ++j)
            os << format_value(spec.mu_grid[i]) << ',' << format_value(spec.kappa_grid[j]) << ','
               << format_value(values[i * nk + j]) << '\n';
}

std::vector<double> parse_grid(const std::string& text) {
    if (text.find(':') != std::string::npos) {
        double lo, hi;
        std::size_t count;
        char c1, c2;
        std::istringstream ss(text);
        if (!(ss >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':')
            throw std::invalid_argument("grid: expected lo:hi:count, got '" + text + "'");
        return linspace(lo, hi, count);
    }
    std::vector<double> g;
    std::istringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.empty()) continue;
        g.push_back(std::stod(cell));
    }
    if (g.empty()) throw std::invalid_argument("grid: no values in '" + text + "'");
    return g;
}

SweepQuantity parse_quantity(const std::string& name) {
    if (name == "qcap") return SweepQuantity::QuantumCapacity;
    if (name == "ccap") return SweepQuantity::ClassicalCapacity;
    if (name == "clow") return SweepQuantity::ClassicalLowerBound;
    if (name == "summary") return SweepQuantity::SpectrumSummary;
    throw std::invalid_argument("sweep: unknown quantity '" + name +
                                "' (expected qcap, ccap, clow, or summary)");
}

SweepSpec default_quantum_map() {
    SweepSpec s;
    s.quantity = SweepQuantity::QuantumCapacity;
    s.mu_grid = linspace(0.0, 0.99, 101);
    s.kappa_grid = linspace(0.0, 1.99, 101);  // 1.99/100 steps never land on 1
    return s;
}

SweepSpec default_classical_map() {
    SweepSpec s;
    s.quantity = SweepQuantity::ClassicalCapacity;
    s.mu_grid = linspace(0.0, 1.0, 101);
    s.kappa_grid = linspace(0.0, 1.0, 101);
    s.N = 8.0;
    return s;
}

SweepSpec default_classical_lower_map() {
    SweepSpec s;
    s.quantity = SweepQuantity::ClassicalLowerBound;
    s.mu_grid = linspace(0.0, 1.0, 101);
    s.kappa_grid = linspace(1.01, 2.0, 100);
    s.N = 8.0;
    return s;
}

}  // namespace gmc
