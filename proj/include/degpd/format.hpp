#pragma once

#include <charconv>
#include <string>

namespace degpd {

// Shortest round-trip decimal form, locale-independent: study CSVs must be
// byte-identical across runs and job counts.
inline std::string double_to_string(double value) {
  char buffer[32];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

}  // namespace degpd
