#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mhdlab::cli {

/// Exit codes: 0 success, 1 configuration or runtime error, 2 analytic and
/// numeric verdicts disagree.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitConflict = 2;

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace mhdlab::cli
