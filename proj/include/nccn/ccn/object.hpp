#ifndef NCCN_CCN_OBJECT_HPP
#define NCCN_CCN_OBJECT_HPP

#include "nccn/ccn/packet.hpp"

namespace nccn::ccn {

/// High 32 bits from the object name, low 32 bits the generation's first chunk (0-based).
uint64_t
generationIdBase(const ContentName& prefix);

inline uint32_t
firstChunkOf(rlnc::GenerationId gen)
{
  return static_cast<uint32_t>(gen.value & 0xFFFFFFFFu);
}

/** \brief A named content object split into chunks and coding generations.
 */
class ContentObject
{
public:
  /// \throw std::domain_error on empty data or zero chunk size / window
  ContentObject(ContentName prefix, std::span<const uint8_t> data, std::size_t chunkSize,
                std::size_t window);

  const ContentName&
  prefix() const
  {
    return m_prefix;
  }

  uint32_t
  chunkCount() const
  {
    return static_cast<uint32_t>(m_chunks.size());
  }

  std::size_t
  chunkSize() const
  {
    return m_chunkSize;
  }

  std::size_t
  window() const
  {
    return m_window;
  }

  std::size_t
  size() const
  {
    return m_size;
  }

  /// unpadded chunk, 1-based
  const Bytes&
  chunk(uint32_t index) const;

  const std::vector<rlnc::Generation>&
  generations() const
  {
    return m_generations;
  }

  const rlnc::Generation*
  findGeneration(rlnc::GenerationId id) const;

  /// Plain Data for chunk \p index (1-based).
  DataPacket
  plainData(uint32_t index) const;

  /// Reassembles the object from per-chunk payloads (padded or not).
  Bytes
  assemble(const std::vector<Bytes>& chunks) const;

private:
  ContentName m_prefix;
  std::size_t m_chunkSize;
  std::size_t m_window;
  std::size_t m_size;
  std::vector<Bytes> m_chunks;
  std::vector<rlnc::Generation> m_generations;
};

} // namespace nccn::ccn

#endif
