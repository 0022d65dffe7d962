#ifndef NCCN_NC3N_NC3N_HPP
#define NCCN_NC3N_NC3N_HPP

#include "nccn/ccn/packet.hpp"
#include "nccn/nc3n/coding-window.hpp"

#include <iosfwd>

/** \brief Network-coded Interest/Data behaviors layered on the named-data engine.
 */
namespace nccn::nc3n {

/// Random draws a responder makes before falling back to an exact span check.
inline constexpr int RESPONSE_RETRIES = 8;

enum class CacheEffect {
  StoredInnovative,
  DroppedRedundant,
  Decoded,
};

/** \brief Coded chunks of one generation held in a Content Store.
 *
 *  Redundant arrivals are never stored. Once the rank reaches k the sources
 *  are decoded and kept, and the entry can answer plain-chunk Interests.
 */
class CodedStoreEntry
{
public:
  CodedStoreEntry(ccn::ContentName prefix, rlnc::GenerationId gen, std::size_t k, std::size_t chunkSize);

  /// Entry shaped to hold the coded content of \p data.
  /// \throw std::domain_error when data is not coded
  static CodedStoreEntry
  forData(const ccn::DataPacket& data);

  const ccn::ContentName&
  prefix() const
  {
    return m_prefix;
  }

  const rlnc::Decoder&
  held() const
  {
    return m_held;
  }

  bool
  isDecoded() const
  {
    return m_decoded.has_value();
  }

  /// decoded sources as a generation (padded chunks)
  const std::optional<rlnc::Generation>&
  decoded() const
  {
    return m_decoded;
  }

  /// Plain chunk \p index (1-based object index) when decoded and in range.
  std::optional<ccn::DataPacket>
  plainChunk(uint32_t index) const;

private:
  friend CacheEffect
  cacheCoded(CodedStoreEntry&, const ccn::DataPacket&);

  ccn::ContentName m_prefix;
  rlnc::Decoder m_held;
  std::optional<rlnc::Generation> m_decoded;
};

std::ostream&
operator<<(std::ostream& os, CacheEffect e);

/// Absorbs a coded chunk into \p entry.
/// \throw std::domain_error on a plain packet or generation mismatch
CacheEffect
cacheCoded(CodedStoreEntry& entry, const ccn::DataPacket& data);

/// NC-flagged Interest for \p prefix/NCChunk whose digest mirrors \p state.
ccn::Interest
makeNcInterest(const ccn::ContentName& prefix, const rlnc::Decoder& state, uint64_t nonce);

/// Coded response from a full set of sources (a repository).
/// Always answers unless the digest already has full rank.
/// \throw std::domain_error when the Interest does not target this generation
std::optional<ccn::DataPacket>
respondNc(const ccn::ContentName& prefix, const rlnc::Generation& sources, const ccn::Interest& interest,
          RandomSource& rng);

/// Coded response recoded from a cache entry; empty when the entry adds no
/// degree of freedom over the Interest's digest.
std::optional<ccn::DataPacket>
respondNc(const CodedStoreEntry& entry, const ccn::Interest& interest, RandomSource& rng);

ccn::DataPacket
makeCodedData(const ccn::ContentName& prefix, const rlnc::CodedChunk& chunk);

rlnc::CodedChunk
toCodedChunk(const ccn::DataPacket& data);

/// SignedInfo coding metadata: gen_id u64 | k u16 | k coefficient bytes
Bytes
encodeCodingInfo(const ccn::CodingInfo& info);

/// \throw ParseError
ccn::CodingInfo
decodeCodingInfo(std::span<const uint8_t> wire);

} // namespace nccn::nc3n

#endif // NCCN_NC3N_NC3N_HPP
