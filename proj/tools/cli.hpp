#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace liouville::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;      // rejected certificate, unmet target
inline constexpr int kExitInvalid = 2;     // bad config, malformed input
inline constexpr int kExitPrecision = 3;   // undecided at this budget, unmaterializable

// Runs one command line (without the program name).  Data goes to `out`,
// diagnostics to `err` as one JSON object per line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liouville::cli
