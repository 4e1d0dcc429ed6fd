#pragma once

#include <string>
#include <vector>

namespace cmaf::cli {

// Exit codes: 0 success, 1 validation findings, 2 usage / IO error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitUsage = 2;

int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

} // namespace cmaf::cli
