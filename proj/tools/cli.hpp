#ifndef DRIFTWATCH_TOOLS_CLI_HPP
#define DRIFTWATCH_TOOLS_CLI_HPP

#include <string>
#include <vector>

namespace driftwatch::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2 };

/// Entry point shared by the executable and the tests. `args[0]` is the
/// program name.
int run(const std::vector<std::string>& args);

}  // namespace driftwatch::cli

#endif
