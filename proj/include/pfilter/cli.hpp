#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pfilter::cli {

inline constexpr std::string_view kVersion = "0.1.0";

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,           // success, or the property holds
  kNegative = 1,     // simulation fails, size-k answer is No, not universal
  kUsage = 2,        // bad arguments or malformed input
  kBudget = 3,       // search budget or state cap exhausted
};

/// Runs the command line `args` (args[0] is the program name). Normal
/// output goes to `out`; diagnostics and the one-line machine-readable
/// error record ("error<TAB>Kind<TAB>message") go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace pfilter::cli
