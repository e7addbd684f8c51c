#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weil::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitInvariant = 4;

inline constexpr const char* kSchemaVersion = "report.v1";

std::string tool_version();

/// Runs one invocation; `args` excludes the program name. `color` enables ANSI
/// colors in table output (the caller decides, e.g. from isatty and NO_COLOR).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace weil::cli
