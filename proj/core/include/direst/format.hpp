#pragma once

#include <cstdio>
#include <string>

namespace direst {

// Shortest round-trippable decimal form of a double (17 significant digits).
// All text artifacts use this so that identical runs serialize identically.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace direst
