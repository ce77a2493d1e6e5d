#pragma once

#include <cstdio>
#include <string>

namespace depthkit {

inline constexpr const char* kVersion = "depthkit 0.1.0";

/// Shortest round-trip-safe rendering: 17 significant digits.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace depthkit
