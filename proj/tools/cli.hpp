#pragma once

#include <iosfwd>

namespace tubeduality::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitUsage = 64;

// Entry point of the `tubeduality` tool; never calls std::exit.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tubeduality::cli
