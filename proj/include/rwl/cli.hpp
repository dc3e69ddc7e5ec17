#pragma once

#include <string>
#include <vector>

namespace rwl::cli {

/// Exit codes: 0 success, 1 usage/config error, 2 certification (or speed
/// validation) failure, 3 blow-up detection.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCertFail = 2;
inline constexpr int kExitBlowUp = 3;

int run(const std::vector<std::string>& args);

} // namespace rwl::cli
