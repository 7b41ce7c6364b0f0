#include "coindex/format.hpp"

#include <charconv>
#include <cmath>

namespace coindex {

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  if (std::nearbyint(value) == value && std::fabs(value) < 1e15) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 0);
    return std::string(buf, ptr);
  }
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace coindex
