#pragma once

#include <string>

namespace ldpcgm {

/// Round-trip decimal text for a double ("inf", "-inf", "nan" for non-finite).
std::string format_double(double value);

}  // namespace ldpcgm
