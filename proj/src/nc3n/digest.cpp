#include "nccn/nc3n/digest.hpp"
#include "nccn/byte-io.hpp"

namespace nccn::nc3n {

NcInterestDigest
NcInterestDigest::fromDecoder(const rlnc::Decoder& state)
{
  return NcInterestDigest{state.generation(), static_cast<uint16_t>(state.k()), state.basis()};
}

rlnc::Decoder
NcInterestDigest::toDecoder() const
{
  if (k == 0) {
    throw std::domain_error("digest with k = 0");
  }
  if (rows.size() > k) {
    throw std::domain_error("digest rank exceeds k");
  }
  rlnc::Decoder dec(generation, k, 0);
  for (const auto& row : rows) {
    if (row.size() != k) {
      throw std::domain_error("digest row length differs from k");
    }
    if (dec.addVector(row) != rlnc::AddResult::Innovative) {
      throw std::domain_error("digest rows are linearly dependent");
    }
  }
  return dec;
}

Bytes
encodeDigest(const NcInterestDigest& digest)
{
  ByteWriter w;
  w.u64(digest.generation.value).u16(digest.k).u16(static_cast<uint16_t>(digest.rows.size()));
  for (const auto& row : digest.rows) {
    if (row.size() != digest.k) {
      throw std::domain_error("digest row length differs from k");
    }
    w.raw(row);
  }
  return w.take();
}

NcInterestDigest
decodeDigest(std::span<const uint8_t> wire)
{
  ByteReader r(wire);
  NcInterestDigest d;
  d.generation.value = r.u64();
  d.k = r.u16();
  auto rank = r.u16();
  if (rank > d.k) {
    throw ParseError("digest rank " + std::to_string(rank) + " exceeds k " + std::to_string(d.k));
  }
  for (unsigned i = 0; i < rank; ++i) {
    d.rows.push_back(r.raw(d.k));
  }
  r.expectEnd();
  return d;
}

} // namespace nccn::nc3n
