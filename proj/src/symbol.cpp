#include "gmc/symbol.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gmc {

namespace {
constexpr double kTiny = 1e-14;
}

double AsymptoticSymbol::operator()(double z) const {
    const double b = 2.0 * std::sqrt(mu * kappa);
    const double c = std::cos(0.5 * z);
    const double num = mu + kappa - b * c;
    const double den = 1.0 + mu * kappa - b * c;
    if (den <= kTiny) {
        // pole at z = 0 on the threshold manifold; mu = kappa = 1 is the
        // identity channel where the ratio stays 1.
        if (num <= kTiny) return 1.0;
        return std::numeric_limits<double>::infinity();
    }
    return num / den;
}

bool AsymptoticSymbol::constant() const {
    // mu*kappa = 0 gives a flat symbol, kappa = 1 or mu = 1 give eta == 1
    return mu * kappa <= kTiny || std::abs(kappa - 1.0) <= kTiny || std::abs(mu - 1.0) <= kTiny;
}

double AsymptoticSymbol::eta_min() const {
    return kappa <= 1.0 ? (*this)(0.0) : (*this)(kTwoPi);
}

double AsymptoticSymbol::eta_max() const {
    return kappa <= 1.0 ? (*this)(kTwoPi) : (*this)(0.0);
}

std::optional<double> AsymptoticSymbol::preimage_z(double target) const {
    const double b = 2.0 * std::sqrt(mu * kappa);
    if (b <= kTiny || std::abs(1.0 - target) <= kTiny || constant()) return std::nullopt;
    // solve (mu + kappa - b c) = target (1 + mu kappa - b c) for c = cos(z/2)
    const double c = (mu + kappa - target * (1.0 + mu * kappa)) / (b * (1.0 - target));
    if (!(c > -1.0 && c < 1.0)) return std::nullopt;
    return 2.0 * std::acos(c);
}

double symbol_mean(double mu, double kappa) {
    const double gap = std::abs(1.0 - mu * kappa);
    const double num = (1.0 - mu) * (1.0 - kappa);
    if (gap <= kTiny)
        return num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return 1.0 - num / gap;
}

QuadratureResult szego_average(const std::function<double(double)>& F, double mu, double kappa,
                               const std::vector<double>& kinks, const QuadratureSpec& spec,
                               Exec exec) {
    if (!(mu >= 0.0 && mu <= 1.0 && kappa >= 0.0))
        throw std::invalid_argument("szego_average: parameters out of domain");
    const AsymptoticSymbol sym{mu, kappa};
    std::vector<double> breaks;
    for (double k : kinks)
        if (auto z = sym.preimage_z(k)) breaks.push_back(*z);
    return integrate_mean([&](double z) { return F(sym(z)); }, breaks, spec, exec);
}

}  // namespace gmc
