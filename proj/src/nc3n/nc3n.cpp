#include "nccn/nc3n/nc3n.hpp"
#include "nccn/byte-io.hpp"
#include "nccn/ccn/object.hpp"

#include <ostream>

namespace nccn::nc3n {

CodedStoreEntry::CodedStoreEntry(ccn::ContentName prefix, rlnc::GenerationId gen, std::size_t k,
                                 std::size_t chunkSize)
  : m_prefix(prefix.prefix())
  , m_held(gen, k, chunkSize)
{
}

CodedStoreEntry
CodedStoreEntry::forData(const ccn::DataPacket& data)
{
  auto* info = data.coding();
  if (info == nullptr) {
    throw std::domain_error("coded store entry needs coded data");
  }
  return CodedStoreEntry(data.name, info->generation, info->vector.size(), data.payload.size());
}

std::optional<ccn::DataPacket>
CodedStoreEntry::plainChunk(uint32_t index) const
{
  if (!m_decoded || index == 0) {
    return std::nullopt;
  }
  auto first = ccn::firstChunkOf(m_decoded->id);
  if (index - 1 < first || index - 1 - first >= m_decoded->k()) {
    return std::nullopt;
  }
  // total chunk count is not carried by coded metadata
  return ccn::DataPacket{m_prefix.withChunk(index), ccn::DEFAULT_SIGNATURE, ccn::PlainInfo{index, 0},
                         m_decoded->chunks[index - 1 - first]};
}

std::ostream&
operator<<(std::ostream& os, CacheEffect e)
{
  switch (e) {
    case CacheEffect::StoredInnovative:
      return os << "stored-innovative";
    case CacheEffect::DroppedRedundant:
      return os << "dropped-redundant";
    case CacheEffect::Decoded:
      return os << "decoded";
  }
  return os << "?";
}

CacheEffect
cacheCoded(CodedStoreEntry& entry, const ccn::DataPacket& data)
{
  auto chunk = toCodedChunk(data);
  if (entry.m_decoded) {
    if (chunk.generation != entry.m_held.generation()) {
      throw std::domain_error("coded data for another generation");
    }
    return CacheEffect::DroppedRedundant;
  }
  if (entry.m_held.add(chunk) == rlnc::AddResult::Redundant) {
    return CacheEffect::DroppedRedundant;
  }
  if (!entry.m_held.isComplete()) {
    return CacheEffect::StoredInnovative;
  }
  entry.m_decoded = rlnc::Generation::fromChunks(entry.m_held.generation(), entry.m_held.decode(),
                                                 entry.m_held.chunkSize());
  return CacheEffect::Decoded;
}

ccn::Interest
makeNcInterest(const ccn::ContentName& prefix, const rlnc::Decoder& state, uint64_t nonce)
{
  ccn::Interest i;
  i.name = prefix.prefix().withNcMarker();
  i.nonce = nonce;
  i.selector.ncFlag = true;
  i.selector.digest = NcInterestDigest::fromDecoder(state);
  return i;
}

ccn::DataPacket
makeCodedData(const ccn::ContentName& prefix, const rlnc::CodedChunk& chunk)
{
  return ccn::DataPacket{prefix.prefix().withNcMarker(), ccn::DEFAULT_SIGNATURE,
                         ccn::CodingInfo{chunk.generation, chunk.vector}, chunk.payload};
}

rlnc::CodedChunk
toCodedChunk(const ccn::DataPacket& data)
{
  auto* info = data.coding();
  if (info == nullptr) {
    throw std::domain_error("plain data carries no coded chunk");
  }
  return rlnc::CodedChunk{info->generation, info->vector, data.payload};
}

namespace {

rlnc::Decoder
digestOf(const ccn::Interest& interest, rlnc::GenerationId gen, std::size_t k)
{
  if (!interest.selector.ncFlag || !interest.selector.digest) {
    throw std::domain_error("interest does not allow coded responses");
  }
  const auto& digest = *interest.selector.digest;
  if (digest.generation != gen || digest.k != k) {
    throw std::domain_error("interest digest targets another generation");
  }
  return digest.toDecoder();
}

} // namespace

std::optional<ccn::DataPacket>
respondNc(const ccn::ContentName& prefix, const rlnc::Generation& sources, const ccn::Interest& interest,
          RandomSource& rng)
{
  auto have = digestOf(interest, sources.id, sources.k());
  if (have.isComplete()) {
    return std::nullopt;
  }
  for (int attempt = 0; attempt < RESPONSE_RETRIES; ++attempt) {
    auto chunk = rlnc::encodeRandom(sources, rng);
    if (have.isInnovative(chunk.vector)) {
      return makeCodedData(prefix, chunk);
    }
  }
  // rank < k, so at least one unit vector lies outside the digest span
  for (std::size_t i = 0; i < sources.k(); ++i) {
    auto chunk = rlnc::encodeSystematic(sources, i);
    if (have.isInnovative(chunk.vector)) {
      return makeCodedData(prefix, chunk);
    }
  }
  throw InvariantViolation("rank below k but no unit vector is innovative");
}

std::optional<ccn::DataPacket>
respondNc(const CodedStoreEntry& entry, const ccn::Interest& interest, RandomSource& rng)
{
  if (entry.decoded()) {
    return respondNc(entry.prefix(), *entry.decoded(), interest, rng);
  }
  const auto& held = entry.held();
  auto have = digestOf(interest, held.generation(), held.k());
  if (held.rank() == 0 || have.isComplete()) {
    return std::nullopt;
  }
  auto rows = held.rows();
  for (int attempt = 0; attempt < RESPONSE_RETRIES; ++attempt) {
    auto chunk = rlnc::recode(rows, rng);
    if (have.isInnovative(chunk.vector)) {
      return makeCodedData(entry.prefix(), chunk);
    }
  }
  // exact check: the held span adds a DoF iff some basis row does
  for (const auto& row : rows) {
    if (have.isInnovative(row.vector)) {
      return makeCodedData(entry.prefix(), row);
    }
  }
  return std::nullopt;
}

Bytes
encodeCodingInfo(const ccn::CodingInfo& info)
{
  ByteWriter w;
  w.u64(info.generation.value).u16(static_cast<uint16_t>(info.vector.size())).raw(info.vector);
  return w.take();
}

ccn::CodingInfo
decodeCodingInfo(std::span<const uint8_t> wire)
{
  ByteReader r(wire);
  ccn::CodingInfo info;
  info.generation.value = r.u64();
  info.vector = r.raw(r.u16());
  r.expectEnd();
  return info;
}

} // namespace nccn::nc3n
