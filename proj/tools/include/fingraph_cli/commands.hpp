#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fingraph::cli {

/// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotConverged = 2;

/// Each command takes its arguments without the program or subcommand name.
int cmd_learn(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_metrics(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_simulate(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Dispatches on args[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string tool_version();

}  // namespace fingraph::cli
