#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lncv::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kDataError = 3,
  kVerificationFailure = 4,
  kBudgetRefusal = 5,
};

/// Environment variable that caps runs * n per simulation cell.
inline constexpr const char* kBudgetEnvVar = "LNCV_VARIATE_BUDGET";

/// Runs the command line `args` (args[0] is the program name). Standard input
/// is read from `in` when a command is given "-" as its input path.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace lncv::cli
