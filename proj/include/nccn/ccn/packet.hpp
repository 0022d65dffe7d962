#ifndef NCCN_CCN_PACKET_HPP
#define NCCN_CCN_PACKET_HPP

#include "nccn/ccn/name.hpp"
#include "nccn/nc3n/digest.hpp"

#include <optional>

namespace nccn::ccn {

using FaceId = std::size_t;

struct Selector
{
  bool ncFlag = false;
  std::optional<nc3n::NcInterestDigest> digest; ///< present only with ncFlag
  bool orderRequired = false;                   ///< forces ncFlag off

  friend bool
  operator==(const Selector&, const Selector&) = default;
};

struct Interest
{
  ContentName name;
  Selector selector;
  uint64_t nonce = 0;

  friend bool
  operator==(const Interest&, const Interest&) = default;
};

/// Plain (uncoded) chunk metadata.
struct PlainInfo
{
  uint32_t chunkIndex = 1;
  uint32_t finalChunk = 1;

  friend bool
  operator==(const PlainInfo&, const PlainInfo&) = default;
};

/// Coding metadata for a coded chunk.
struct CodingInfo
{
  rlnc::GenerationId generation;
  rlnc::CodingVector vector;

  friend bool
  operator==(const CodingInfo&, const CodingInfo&) = default;
};

using SignedInfo = std::variant<PlainInfo, CodingInfo>;

struct DataPacket
{
  ContentName name;
  Bytes signature; ///< opaque placeholder, never verified
  SignedInfo signedInfo;
  Bytes payload;

  bool
  isCoded() const
  {
    return std::holds_alternative<CodingInfo>(signedInfo);
  }

  const CodingInfo*
  coding() const
  {
    return std::get_if<CodingInfo>(&signedInfo);
  }

  const PlainInfo*
  plain() const
  {
    return std::get_if<PlainInfo>(&signedInfo);
  }

  friend bool
  operator==(const DataPacket&, const DataPacket&) = default;
};

/// Interest for a plain chunk (or a bare name). orderRequired keeps coding off.
Interest
makeInterest(const ContentName& name, uint64_t nonce, bool orderRequired = false);

/// Checks the flag/name/digest consistency rules; returns a reason when malformed.
std::optional<std::string>
checkInterest(const Interest& interest);

/// Checks that coded metadata appears exactly on NCChunk names.
std::optional<std::string>
checkData(const DataPacket& data);

/// Pending-table key: resolved chunk name, or NC name plus generation.
std::string
pitKey(const Interest& interest);

std::string
pitKey(const DataPacket& data);

/// Approximate encoded sizes used for byte counters.
std::size_t
wireSize(const Interest& interest);

std::size_t
wireSize(const DataPacket& data);

inline const Bytes DEFAULT_SIGNATURE{'u', 'n', 's', 'i', 'g', 'n', 'e', 'd'};

} // namespace nccn::ccn

#endif // NCCN_CCN_PACKET_HPP
