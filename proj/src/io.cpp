#include "gmc/io.hpp"

#include <cstdio>

namespace gmc {

std::string format_value(double v, int significant_digits) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, v);
    return buf;
}

}  // namespace gmc
