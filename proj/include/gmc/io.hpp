// io.hpp — output formatting shared by the CLI and report writers.
// Values print with 9 significant digits and divergences as the literal
// "inf" so regression CSVs diff cleanly.

#pragma once

#include <string>

namespace gmc {

std::string format_value(double v, int significant_digits = 9);

}  // namespace gmc
