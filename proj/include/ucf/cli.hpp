#ifndef UCF_CLI_HPP
#define UCF_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ucf::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitVerifyFailed = 3,
};

// Entry point of the `ucf` tool. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ucf::cli

#endif  // UCF_CLI_HPP
