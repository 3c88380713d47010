// gmc — command-line surface for the Gaussian memory-channel library.
//
// Subcommands: qcap (single-point quantum capacity), sweep (parameter maps
// as CSV), spectrum (finite spectrum vs asymptotic symbol), bounds
// (block sandwich bounds as JSON), forget (memory decay report as JSON).
// Exit codes: 0 success, 2 domain error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gmc/capacity.hpp"
#include "gmc/coupling.hpp"
#include "gmc/eigensolver.hpp"
#include "gmc/forgetful.hpp"
#include "gmc/gram.hpp"
#include "gmc/io.hpp"
#include "gmc/spectra.hpp"
#include "gmc/sweep.hpp"
#include "gmc/symbol.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitNumerical = 3;

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("cannot open output path '" + path + "'");
    return os;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const char* what) {
    std::vector<std::size_t> out;
    std::istringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.empty()) continue;
        const long long v = std::stoll(cell);
        if (v <= 0) throw std::invalid_argument(std::string(what) + ": entries must be positive");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

struct CommonOpts {
    double mu = 0.0;
    double kappa = 0.5;
    std::string out;
    int quad_points = 4096;

    gmc::QuadratureSpec quad() const {
        gmc::QuadratureSpec q;
        q.base_points = quad_points;
        return q;
    }
};

int run_qcap(const CommonOpts& o) {
    const double v = gmc::quantum_capacity(o.mu, o.kappa, o.quad());
    std::cout << gmc::format_value(v) << '\n';
    return kExitOk;
}

int run_sweep(const CommonOpts& o, const std::string& quantity, const std::string& mu_grid,
              const std::string& kappa_grid, std::optional<double> N, const std::string& format) {
    gmc::SweepSpec spec;
    spec.quantity = gmc::parse_quantity(quantity);
    switch (spec.quantity) {
        case gmc::SweepQuantity::ClassicalCapacity: spec = gmc::default_classical_map(); break;
        case gmc::SweepQuantity::ClassicalLowerBound:
            spec = gmc::default_classical_lower_map();
            break;
        default:
            spec = gmc::default_quantum_map();
            spec.quantity = gmc::parse_quantity(quantity);
            break;
    }
    if (!mu_grid.empty()) spec.mu_grid = gmc::parse_grid(mu_grid);
    if (!kappa_grid.empty()) spec.kappa_grid = gmc::parse_grid(kappa_grid);
    if (N) spec.N = *N;

    const std::vector<double> values = gmc::run_sweep(spec, o.quad());
    auto emit = [&](std::ostream& os) {
        if (format == "json") {
            const std::size_t nk = spec.kappa_grid.size();
            os << "[";
            for (std::size_t i = 0; i < spec.mu_grid.size(); ++i)
                for (std::size_t j = 0; j < nk; ++j) {
                    if (i + j > 0) os << ",";
                    os << "{\"mu\":" << gmc::format_value(spec.mu_grid[i])
                       << ",\"kappa\":" << gmc::format_value(spec.kappa_grid[j])
                       << ",\"value\":\"" << gmc::format_value(values[i * nk + j]) << "\"}";
                }
            os << "]\n";
        } else {
            gmc::write_sweep_csv(spec, values, os);
        }
    };
    if (o.out.empty()) {
        emit(std::cout);
    } else {
        auto os = open_out(o.out);
        emit(os);
    }
    return kExitOk;
}

int run_spectrum(const CommonOpts& o, std::size_t n) {
    const gmc::ChannelParams p{o.mu, o.kappa, n};
    const std::vector<double> eta = gmc::eigh_values(gmc::build_gram_matrix(p).M);
    const gmc::AsymptoticSymbol sym{o.mu, o.kappa};
    constexpr std::size_t kSymbolSamples = 512;

    auto emit = [&](std::ostream& os) {
        os << "j,eta,z,eta_symbol\n";
        const std::size_t rows = std::max(eta.size(), kSymbolSamples);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i < eta.size()) os << (i + 1) << ',' << gmc::format_value(eta[i]);
            else os << ',';
            if (i < kSymbolSamples) {
                const double z = (double(i) + 0.5) * gmc::kTwoPi / double(kSymbolSamples);
                os << ',' << gmc::format_value(z) << ',' << gmc::format_value(sym(z));
            } else {
                os << ",,";
            }
            os << '\n';
        }
    };
    if (o.out.empty()) {
        emit(std::cout);
    } else {
        auto os = open_out(o.out);
        emit(os);
    }
    return kExitOk;
}

int run_bounds(const CommonOpts& o, const std::string& blocks, const std::string& schedule,
               std::optional<double> N) {
    const auto P_list = parse_size_list(blocks, "--blocks");
    const auto n_schedule = parse_size_list(schedule, "--n-schedule");
    if (N && o.kappa > 1.0)
        throw std::invalid_argument("exact classical capacity unavailable for amplifier");

    bool all_converged = true;
    std::ostringstream body;
    body << "{\"mu\":" << gmc::format_value(o.mu) << ",\"kappa\":" << gmc::format_value(o.kappa);
    if (N) body << ",\"N\":" << gmc::format_value(*N);
    body << ",\"quantum\":[";
    for (std::size_t i = 0; i < P_list.size(); ++i) {
        const gmc::ChannelParams p{o.mu, o.kappa, n_schedule.back()};
        const gmc::CapacityBounds qb = gmc::quantum_capacity_bounds(p, P_list[i], n_schedule);
        all_converged = all_converged && qb.converged;
        if (i) body << ",";
        body << "{\"P\":" << P_list[i] << ",\"lower\":" << gmc::format_value(qb.lower)
             << ",\"upper\":" << gmc::format_value(qb.upper)
             << ",\"converged\":" << (qb.converged ? "true" : "false") << "}";
    }
    body << "]";
    if (N) {
        body << ",\"classical\":[";
        for (std::size_t i = 0; i < P_list.size(); ++i) {
            const gmc::ChannelParams p{o.mu, o.kappa, n_schedule.back()};
            const gmc::CapacityBounds cb =
                gmc::classical_capacity_bounds_attenuator(p, P_list[i], n_schedule, *N);
            all_converged = all_converged && cb.converged;
            if (i) body << ",";
            body << "{\"P\":" << P_list[i] << ",\"lower\":" << gmc::format_value(cb.lower)
                 << ",\"upper\":" << gmc::format_value(cb.upper)
                 << ",\"converged\":" << (cb.converged ? "true" : "false") << "}";
        }
        body << "]";
    }
    if (!all_converged)
        body << ",\"warning\":\"bounds not converged; extend --n-schedule\"";
    body << "}";

    if (o.out.empty()) {
        std::cout << body.str() << '\n';
    } else {
        auto os = open_out(o.out);
        os << body.str() << '\n';
    }
    return kExitOk;
}

int run_forget(const CommonOpts& o, std::size_t n_max) {
    std::vector<std::size_t> n_range;
    for (std::size_t n = 1; n <= n_max; ++n) n_range.push_back(n);
    const gmc::DecayReport rep = gmc::forgetfulness_decay(
        o.mu, o.kappa, [](std::size_t n) { return gmc::vacuum_scenario(n); },
        [](std::size_t n) { return gmc::displaced_heated_scenario(n, {1.0, 0.0}, 1.0); },
        n_range);
    if (o.out.empty()) {
        gmc::write_decay_report_json(rep, std::cout);
    } else {
        auto os = open_out(o.out);
        gmc::write_decay_report_json(rep, os);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bosonic Gaussian memory-channel toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string quantity = "qcap", mu_grid, kappa_grid, format = "csv";
    std::optional<double> mean_photon;
    std::size_t n_uses = 64;

    auto add_common = [&](CLI::App* cmd, bool needs_point) {
        if (needs_point) {
            cmd->add_option("--mu", o.mu, "memory coupling in [0, 1]")->required();
            cmd->add_option("--kappa", o.kappa, "transmissivity (<=1) or gain (>1)")->required();
        }
        cmd->add_option("--out", o.out, "output path (default: stdout)");
        cmd->add_option("--quad-points", o.quad_points, "base quadrature points")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* qcap = app.add_subcommand("qcap", "quantum capacity in bits per use");
    add_common(qcap, true);

    CLI::App* sweep = app.add_subcommand("sweep", "parameter-grid map as CSV");
    sweep->add_option("--quantity", quantity, "qcap | ccap | clow | summary");
    sweep->add_option("--mu", mu_grid, "mu grid: lo:hi:count or comma list");
    sweep->add_option("--kappa", kappa_grid, "kappa grid: lo:hi:count or comma list");
    sweep->add_option("--mean-photon", mean_photon, "energy constraint N");
    sweep->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    add_common(sweep, false);

    CLI::App* spectrum = app.add_subcommand("spectrum", "finite spectrum and symbol samples");
    add_common(spectrum, true);
    spectrum->add_option("--n", n_uses, "number of channel uses")->required();

    CLI::App* bounds = app.add_subcommand("bounds", "block sandwich bounds as JSON");
    add_common(bounds, true);
    std::string blocks = "2,4,8", schedule = "64,128,256";
    bounds->add_option("--blocks", blocks, "comma list of block counts P");
    bounds->add_option("--n-schedule", schedule, "comma list of increasing n");
    bounds->add_option("--mean-photon", mean_photon,
                       "also emit classical bounds at this N (kappa <= 1)");

    CLI::App* forget = app.add_subcommand("forget", "memory decay report as JSON lines");
    add_common(forget, true);
    forget->add_option("--n", n_uses, "largest number of uses")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitDomain;
    }

    try {
        if (qcap->parsed()) return run_qcap(o);
        if (sweep->parsed()) return run_sweep(o, quantity, mu_grid, kappa_grid, mean_photon, format);
        if (spectrum->parsed()) return run_spectrum(o, n_uses);
        if (bounds->parsed()) return run_bounds(o, blocks, schedule, mean_photon);
        if (forget->parsed()) return run_forget(o, n_uses);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
