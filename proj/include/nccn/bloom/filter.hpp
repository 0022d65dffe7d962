#ifndef NCCN_BLOOM_FILTER_HPP
#define NCCN_BLOOM_FILTER_HPP

#include "nccn/common.hpp"

#include <array>
#include <compare>

namespace nccn::bloom {

inline constexpr std::size_t FILTER_BITS = 256;
inline constexpr std::size_t LINK_ID_BITS = 5;

/// Fixed-width bit pattern; bit i lives in word i / 64.
struct BitPattern
{
  std::array<uint64_t, FILTER_BITS / 64> words{};

  bool
  test(std::size_t bit) const
  {
    return (words[bit / 64] >> (bit % 64)) & 1;
  }

  void
  set(std::size_t bit)
  {
    words[bit / 64] |= uint64_t{1} << (bit % 64);
  }

  std::size_t
  popcount() const;

  bool
  none() const
  {
    return popcount() == 0;
  }

  /// 32 bytes, each word big-endian, word 0 first
  Bytes
  toBytes() const;

  static BitPattern
  fromBytes(std::span<const uint8_t> bytes);

  friend auto
  operator<=>(const BitPattern&, const BitPattern&) = default;
};

struct LinkId
{
  BitPattern bits;

  friend auto
  operator<=>(const LinkId&, const LinkId&) = default;
};

struct ZFilter
{
  BitPattern bits;

  ZFilter&
  operator|=(const LinkId& l);

  friend auto
  operator<=>(const ZFilter&, const ZFilter&) = default;
};

using NodeId = uint32_t;

struct DirectedEdge
{
  NodeId from = 0;
  NodeId to = 0;

  friend auto
  operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

/// LINK_ID_BITS distinct positions drawn from a hash chain over (edge, seed, counter).
LinkId
linkId(DirectedEdge edge, uint64_t seed);

/// OR of the LinkIds of \p tree.
ZFilter
buildZFilter(std::span<const DirectedEdge> tree, uint64_t seed);

/// (z & l) == l
bool
forwardMatch(const ZFilter& z, const LinkId& l);

/// Probability that a random non-member LinkId matches a filter of \p edges links.
double
falsePositiveEstimate(std::size_t edges);

struct FlowId
{
  uint64_t value = 0;

  friend auto
  operator<=>(const FlowId&, const FlowId&) = default;
};

/// Symmetric hash of the unordered pair.
/// \throw std::domain_error when a == b
FlowId
deriveFlowId(FlowId a, FlowId b);

} // namespace nccn::bloom

#endif // NCCN_BLOOM_FILTER_HPP
