#pragma once

#include <iosfwd>

namespace ldpcgm::cli {

/// Runs the command line tool in-process. Results go to --out when given,
/// otherwise to `out`; diagnostics go to `err`.
/// Returns 0 on success, 2 on invalid input, 1 on runtime failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ldpcgm::cli
