#include "nccn/gf256.hpp"

#include <array>
#include <stdexcept>

namespace nccn::gf256 {

namespace {

struct Tables
{
  std::array<uint8_t, 512> exp{};
  std::array<uint8_t, 256> log{};
};

constexpr Tables
buildTables()
{
  Tables t;
  unsigned x = 1;
  for (unsigned i = 0; i < 255; ++i) {
    t.exp[i] = static_cast<uint8_t>(x);
    t.log[x] = static_cast<uint8_t>(i);
    x <<= 1;
    if (x & 0x100) {
      x ^= POLYNOMIAL;
    }
  }
  // doubled so that log[a] + log[b] never needs a modulo
  for (unsigned i = 255; i < 512; ++i) {
    t.exp[i] = t.exp[i - 255];
  }
  return t;
}

constexpr Tables TABLES = buildTables();

static_assert(TABLES.exp[8] == 0x1D, "generator 2 must reduce by 0x11D");

} // namespace

Element
mul(Element a, Element b) noexcept
{
  if (a == 0 || b == 0) {
    return 0;
  }
  return TABLES.exp[TABLES.log[a] + TABLES.log[b]];
}

Element
inv(Element a)
{
  if (a == 0) {
    throw std::domain_error("no inverse of zero");
  }
  return TABLES.exp[255 - TABLES.log[a]];
}

Element
div(Element a, Element b)
{
  if (b == 0) {
    throw std::domain_error("division by zero");
  }
  if (a == 0) {
    return 0;
  }
  return TABLES.exp[TABLES.log[a] + 255 - TABLES.log[b]];
}

void
scale(std::span<uint8_t> row, Element c) noexcept
{
  if (c == 1) {
    return;
  }
  if (c == 0) {
    for (auto& v : row) {
      v = 0;
    }
    return;
  }
  const unsigned logC = TABLES.log[c];
  for (auto& v : row) {
    if (v != 0) {
      v = TABLES.exp[TABLES.log[v] + logC];
    }
  }
}

void
addScaled(std::span<uint8_t> dst, std::span<const uint8_t> src, Element c)
{
  if (dst.size() != src.size()) {
    throw std::invalid_argument("addScaled: length mismatch");
  }
  if (c == 0) {
    return;
  }
  if (c == 1) {
    for (std::size_t i = 0; i < dst.size(); ++i) {
      dst[i] ^= src[i];
    }
    return;
  }
  const unsigned logC = TABLES.log[c];
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (src[i] != 0) {
      dst[i] ^= TABLES.exp[TABLES.log[src[i]] + logC];
    }
  }
}

} // namespace nccn::gf256
