#ifndef CAPSHARE_CLI_HPP
#define CAPSHARE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace capshare::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,       // bad flags, unreadable or malformed input
  kInfeasible = 2,  // enumeration cap exceeded, invalid construction request
  kUnsettled = 3,   // --strict and the dynamics did not settle
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace capshare::cli

#endif  // CAPSHARE_CLI_HPP
