#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace tubeduality {

// Round to 15 significant digits so serialized output is stable across
// platforms; the shortest round-trip form of the result has <= 15 digits.
inline double round15(double x) {
  if (x == 0.0) return 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

inline std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", round15(x));
  return buf;
}

}  // namespace tubeduality
