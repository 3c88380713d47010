#include "gmc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace gmc {

void validate(const ChannelParams& p) {
    if (!(p.mu >= 0.0 && p.mu <= 1.0))
        throw std::invalid_argument("ChannelParams: mu must lie in [0, 1]");
    if (!(p.kappa >= 0.0))
        throw std::invalid_argument("ChannelParams: kappa must be nonnegative");
    if (!std::isfinite(p.mu) || !std::isfinite(p.kappa))
        throw std::invalid_argument("ChannelParams: parameters must be finite");
    if (p.n < 1) throw std::invalid_argument("ChannelParams: n must be positive");
}

Regime classify_regime(const ChannelParams& p) {
    validate(p);
    const ChannelKind kind = p.kappa <= 1.0 ? ChannelKind::Attenuating : ChannelKind::Amplifying;
    const double prod = p.mu * p.kappa;
    ThresholdRegion region;
    if (std::abs(prod - 1.0) <= kThresholdTolerance)
        region = ThresholdRegion::At;
    else
        region = prod < 1.0 ? ThresholdRegion::Below : ThresholdRegion::Above;
    // kappa <= 1 implies mu*kappa <= 1, so an attenuator is never above.
    return {kind, region};
}

const char* to_string(ChannelKind k) {
    return k == ChannelKind::Attenuating ? "attenuating" : "amplifying";
}

const char* to_string(ThresholdRegion t) {
    switch (t) {
        case ThresholdRegion::Below: return "below";
        case ThresholdRegion::At: return "at";
        default: return "above";
    }
}

Matrix elementary_step(const ChannelParams& p) {
    validate(p);
    const double mu = p.mu, k = p.kappa;
    Matrix s(3, 3, 0.0);
    if (k <= 1.0) {
        // m' =  sqrt(mu k) m + sqrt(1-k) a + sqrt((1-mu)k) e
        // b  = -sqrt(mu(1-k)) m + sqrt(k) a - sqrt((1-mu)(1-k)) e
        // e' = -sqrt(1-mu) m + sqrt(mu) e
        s(0, 0) = std::sqrt(mu * k);
        s(0, 1) = std::sqrt(1.0 - k);
        s(0, 2) = std::sqrt((1.0 - mu) * k);
        s(1, 0) = -std::sqrt(mu * (1.0 - k));
        s(1, 1) = std::sqrt(k);
        s(1, 2) = -std::sqrt((1.0 - mu) * (1.0 - k));
    } else {
        // m' = sqrt(mu k) m + sqrt(k-1) a^dag + sqrt((1-mu)k) e
        // b  = sqrt(mu(k-1)) m^dag + sqrt(k) a + sqrt((1-mu)(k-1)) e^dag
        s(0, 0) = std::sqrt(mu * k);
        s(0, 1) = std::sqrt(k - 1.0);
        s(0, 2) = std::sqrt((1.0 - mu) * k);
        s(1, 0) = std::sqrt(mu * (k - 1.0));
        s(1, 1) = std::sqrt(k);
        s(1, 2) = std::sqrt((1.0 - mu) * (k - 1.0));
    }
    s(2, 0) = -std::sqrt(1.0 - mu);
    s(2, 1) = 0.0;
    s(2, 2) = std::sqrt(mu);
    return s;
}

}  // namespace gmc
