#pragma once

#include <stdexcept>

namespace ldpcgm {

/// Invalid parameters or inputs; the CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace ldpcgm
