// Command-line front end. JSON goes to `out`, one-line summaries to `err`.
// Exit codes: 0 pass, 1 check failed, 2 usage or parse error, 3 budget exceeded.
#pragma once

#include <ostream>

namespace weylchar::cli {

inline constexpr int kPass = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kBudget = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace weylchar::cli
