#pragma once

#include <iosfwd>

namespace ncqm::cli {

/// Exit codes: 0 success, 1 verify found a tolerance breach, 2 bad usage or
/// config, 3 a computation failed.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBreach = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncqm::cli
