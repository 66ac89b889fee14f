#include "ldpcgm/format.hpp"

#include <cmath>
#include <cstdio>

namespace ldpcgm {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

}  // namespace ldpcgm
