#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one scg-cli invocation; `args` excludes the program name.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string mainHelp();

/// Usage text for one command, or an empty string when the command is unknown.
std::string commandHelp(const std::string& command);

}  // namespace scg
