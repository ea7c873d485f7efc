#pragma once

#include <ostream>

namespace gapspec::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumerical = 3 };

/// Runs one invocation: `gapspec <spectrum|det|asymp|scan|verify> [options]`.
/// Tables go to `out` (or --output), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gapspec::cli
