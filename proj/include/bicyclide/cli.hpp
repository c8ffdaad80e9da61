#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bicyclide::cli {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitNumeric = 4;

/// Runs one CLI invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bicyclide::cli
