#ifndef NCCN_COMMON_HPP
#define NCCN_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nccn {

using Bytes = std::vector<uint8_t>;

/** \brief Malformed wire data or textual input.
 */
class ParseError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/** \brief Internal consistency check failed; indicates a bug, never bad input.
 */
class InvariantViolation : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/** \brief Source of 64-bit random words.
 *
 *  All randomness in the library flows through this interface so that every
 *  run can be replayed from a seed, and so tests can script exact draws.
 *  Derived values are taken from the high bits of each word.
 */
class RandomSource
{
public:
  virtual
  ~RandomSource() = default;

  virtual uint64_t
  next() = 0;

  uint8_t
  byte()
  {
    return static_cast<uint8_t>(next() >> 56);
  }

  /// uniform in [0, 1)
  double
  uniform()
  {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

class SeededRandom final : public RandomSource
{
public:
  explicit
  SeededRandom(uint64_t seed)
    : m_engine(seed)
  {
  }

  uint64_t
  next() override
  {
    return m_engine();
  }

private:
  std::mt19937_64 m_engine;
};

std::string
toHex(std::span<const uint8_t> bytes);

/// SplitMix64 finalizer; a fast bijective 64-bit mixer.
constexpr uint64_t
mix64(uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// 64-bit FNV-1a
constexpr uint64_t
fnv1a64(std::string_view text) noexcept
{
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

} // namespace nccn

#endif // NCCN_COMMON_HPP
