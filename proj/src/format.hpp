#pragma once

#include <array>
#include <charconv>
#include <cstdio>
#include <string>

namespace apdlr {

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

/// Fixed 17 significant digits (CSV output).
inline std::string format_sig17(double value) {
  std::array<char, 64> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.17g", value);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

}  // namespace apdlr
