#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace latlaw::cli {

/// Exit codes: 0 success/pass, 1 verification failure or invalid pmf,
/// 2 usage or parameter error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable holding the default truncation order.
inline constexpr const char* kOrderEnv = "LATLAW_ORDER";

/// Runs the command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names accepted by `verify`, sorted.
std::vector<std::string> suite_names();

}  // namespace latlaw::cli
