#pragma once

#include <iosfwd>

namespace psr::cli {

/// Entry point shared by the psr binary and the tests. Returns the process
/// exit code; diagnostics go to err, written file paths to out.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psr::cli
