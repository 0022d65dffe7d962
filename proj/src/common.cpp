#include "nccn/common.hpp"

namespace nccn {

std::string
toHex(std::span<const uint8_t> bytes)
{
  static constexpr char DIGITS[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(DIGITS[b >> 4]);
    out.push_back(DIGITS[b & 0xF]);
  }
  return out;
}

} // namespace nccn
