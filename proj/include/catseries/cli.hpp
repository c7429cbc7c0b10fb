#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cts::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;

/// Environment variable consulted for the worker count when --workers is absent.
inline constexpr const char* kWorkersEnv = "CATSERIES_WORKERS";

/// Runs the tool on `args` (without the program name). Results go to `out`
/// unless an -o/--output file is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cts::cli
