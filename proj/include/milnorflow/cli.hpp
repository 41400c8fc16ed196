#pragma once

#include <iosfwd>

namespace milnorflow::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kUsage = 2;
inline constexpr int kWeights = 3;
inline constexpr int kSingularity = 4;
inline constexpr int kVerification = 5;

// Full command line including argv[0]. Logging goes to `err` at the level
// named by MILNORFLOW_LOG (default warn).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace milnorflow::cli
