#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wigrep::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kValidationFailure = 3,
  kCapExceeded = 4,
  kAlgebraMismatch = 5,
  kUnknownScenario = 6,
};

/// Runs the command line `args` (without the program name). Reports go to
/// --out when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wigrep::cli
