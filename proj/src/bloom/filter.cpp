#include "nccn/bloom/filter.hpp"
#include "nccn/byte-io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace nccn::bloom {

std::size_t
BitPattern::popcount() const
{
  std::size_t n = 0;
  for (auto w : words) {
    n += static_cast<std::size_t>(std::popcount(w));
  }
  return n;
}

Bytes
BitPattern::toBytes() const
{
  ByteWriter w;
  for (auto word : words) {
    w.u64(word);
  }
  return w.take();
}

BitPattern
BitPattern::fromBytes(std::span<const uint8_t> bytes)
{
  ByteReader r(bytes);
  BitPattern p;
  for (auto& word : p.words) {
    word = r.u64();
  }
  r.expectEnd();
  return p;
}

ZFilter&
ZFilter::operator|=(const LinkId& l)
{
  for (std::size_t i = 0; i < bits.words.size(); ++i) {
    bits.words[i] |= l.bits.words[i];
  }
  return *this;
}

LinkId
linkId(DirectedEdge edge, uint64_t seed)
{
  uint64_t base = mix64(seed ^ mix64((uint64_t{edge.from} << 32) | edge.to));
  LinkId id;
  for (uint64_t counter = 0; id.bits.popcount() < LINK_ID_BITS; ++counter) {
    id.bits.set(static_cast<std::size_t>(mix64(base + counter) >> 56));
  }
  return id;
}

ZFilter
buildZFilter(std::span<const DirectedEdge> tree, uint64_t seed)
{
  ZFilter z;
  for (const auto& e : tree) {
    z |= linkId(e, seed);
  }
  return z;
}

bool
forwardMatch(const ZFilter& z, const LinkId& l)
{
  for (std::size_t i = 0; i < z.bits.words.size(); ++i) {
    if ((z.bits.words[i] & l.bits.words[i]) != l.bits.words[i]) {
      return false;
    }
  }
  return true;
}

double
falsePositiveEstimate(std::size_t edges)
{
  double m = FILTER_BITS;
  double h = LINK_ID_BITS;
  double unset = std::pow(1.0 - 1.0 / m, h * static_cast<double>(edges));
  return std::pow(1.0 - unset, h);
}

FlowId
deriveFlowId(FlowId a, FlowId b)
{
  if (a == b) {
    throw std::domain_error("derived flow needs two distinct parents");
  }
  auto [lo, hi] = std::minmax(a.value, b.value);
  return FlowId{mix64(mix64(lo) ^ hi)};
}

} // namespace nccn::bloom
