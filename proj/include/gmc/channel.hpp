// channel.hpp — channel configuration and the single-use building block.
//
// The model couples each signal mode to a memory mode (coupling mu) and to a
// local vacuum environment (coupling kappa). kappa <= 1 attenuates via a
// beam-splitter of transmissivity kappa; kappa > 1 amplifies with gain kappa.

#pragma once

#include <cstddef>
#include <string>

#include "gmc/matrix.hpp"

namespace gmc {

// mu*kappa = 1 separates exponentially damped from exponentially amplified
// memory correlations.
inline constexpr double kThresholdTolerance = 1e-12;

// Largest supported block length; everything downstream is O(n^3).
inline constexpr std::size_t kMaxUses = 2048;

struct ChannelParams {
    double mu = 0.0;     // memory coupling, in [0, 1]
    double kappa = 1.0;  // transmissivity (<= 1) or gain (> 1)
    std::size_t n = 1;   // number of channel uses
};

// Throws std::invalid_argument when out of domain.
void validate(const ChannelParams& p);

enum class ChannelKind { Attenuating, Amplifying };
enum class ThresholdRegion { Below, At, Above };

struct Regime {
    ChannelKind kind;
    ThresholdRegion threshold;
};

Regime classify_regime(const ChannelParams& p);

const char* to_string(ChannelKind k);
const char* to_string(ThresholdRegion t);

// Single-use linear map on mode amplitudes, rows (m', b, e') over columns
// (m, a, e). e' is the discarded environment output; the 3x3 is orthogonal
// for kappa <= 1. For kappa > 1 the rows mix creation operators: m' acts on
// (m, a^dag, e) and b on (m^dag, a, e^dag); the matrix stores the
// coefficient magnitudes with the signs of the attenuating layout.
Matrix elementary_step(const ChannelParams& p);

}  // namespace gmc
