#pragma once

#include <ostream>

namespace monolog {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitScorer = 3 };

/// Entry point of the `monolog` binary. Results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace monolog
