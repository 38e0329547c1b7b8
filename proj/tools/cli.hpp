#ifndef FACLOC_TOOLS_CLI_HPP
#define FACLOC_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace facloc::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;  ///< a verified invariant does not hold
inline constexpr int kUsageError = 2;   ///< bad flags, unreadable input, domain violation

/// Runs the command line `args` (without the program name). Data goes to
/// `out` (or the --out file), diagnostics and progress to `log`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& log);

}  // namespace facloc::cli

#endif  // FACLOC_TOOLS_CLI_HPP
