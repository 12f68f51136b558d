#pragma once

#include <ostream>

namespace nucswitch::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,    ///< bad flags, unreadable or invalid config, invalid range
    kNumericWarning = 2 ///< marginal fixed point or a relaxation that did not converge
};

/// Entry point for the `nucswitch` tool; argv[0] is the program name.
/// CSV written to stdout (steady) goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nucswitch::cli
