#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace modcirc::cli {

inline constexpr const char *kVersion = "0.1.0";

enum ExitCode : int { kPass = 0, kViolated = 1, kUsage = 2 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace modcirc::cli
