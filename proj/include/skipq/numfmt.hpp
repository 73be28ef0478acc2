#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <system_error>

namespace skipq {

// Shortest fixed-notation decimal that parses back to exactly the same
// double. Used for every floating-point field in the CSV artifacts, so two
// runs of the same build can be compared byte for byte while a reader still
// recovers exact values. Callers only pass bounded quantities (rewards,
// step counts, epsilons), so fixed notation stays short.
inline std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
  if (res.ec != std::errc{}) throw std::invalid_argument("format_double: value out of range");
  return std::string(buf, res.ptr);
}

}  // namespace skipq
