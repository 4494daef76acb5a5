#ifndef ECSEA_CLI_HPP
#define ECSEA_CLI_HPP

#include <string>
#include <vector>

namespace ecsea {

/// Runs the command-line interface on the given arguments (program name
/// excluded). Returns the process exit code: 0 ok, 1 internal error,
/// 2 input/usage error, 3 model error.
int run_cli(const std::vector<std::string>& args);

} // namespace ecsea

#endif // ECSEA_CLI_HPP
