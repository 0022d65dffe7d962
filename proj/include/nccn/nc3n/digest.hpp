#ifndef NCCN_NC3N_DIGEST_HPP
#define NCCN_NC3N_DIGEST_HPP

#include "nccn/rlnc.hpp"

namespace nccn::nc3n {

/** \brief Degrees of freedom a requester already holds for one generation.
 *
 *  Carried in the Interest Selector as the requester's row-reduced basis, so
 *  a responder can test innovativeness exactly.
 */
struct NcInterestDigest
{
  rlnc::GenerationId generation;
  uint16_t k = 0;
  std::vector<rlnc::CodingVector> rows;

  std::size_t
  rank() const
  {
    return rows.size();
  }

  static NcInterestDigest
  fromDecoder(const rlnc::Decoder& state);

  /// Vector-only decoder spanning the digest rows.
  /// \throw std::domain_error when rows are malformed or dependent
  rlnc::Decoder
  toDecoder() const;

  friend bool
  operator==(const NcInterestDigest&, const NcInterestDigest&) = default;
};

/// gen_id u64 | k u16 | rank u16 | rank*k coefficient bytes
Bytes
encodeDigest(const NcInterestDigest& digest);

/// \throw ParseError
NcInterestDigest
decodeDigest(std::span<const uint8_t> wire);

} // namespace nccn::nc3n

#endif // NCCN_NC3N_DIGEST_HPP
