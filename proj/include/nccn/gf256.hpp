#ifndef NCCN_GF256_HPP
#define NCCN_GF256_HPP

#include <cstdint>
#include <span>

/** \brief Arithmetic over GF(2^8) with reduction polynomial x^8+x^4+x^3+x^2+1.
 *
 *  Elements are plain bytes. Addition is XOR; multiplication goes through
 *  log/antilog tables built at compile time with generator 2.
 */
namespace nccn::gf256 {

using Element = uint8_t;

inline constexpr unsigned POLYNOMIAL = 0x11D;

constexpr Element
add(Element a, Element b) noexcept
{
  return a ^ b;
}

Element
mul(Element a, Element b) noexcept;

/// \throw std::domain_error when \p a is zero
Element
inv(Element a);

/// \throw std::domain_error when \p b is zero
Element
div(Element a, Element b);

/// row *= c
void
scale(std::span<uint8_t> row, Element c) noexcept;

/// dst += c * src, element-wise. Spans must have equal length.
void
addScaled(std::span<uint8_t> dst, std::span<const uint8_t> src, Element c);

} // namespace nccn::gf256

#endif // NCCN_GF256_HPP
