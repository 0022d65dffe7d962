#include "nccn/ccn/object.hpp"
#include "nccn/nc3n/coding-window.hpp"

namespace nccn::ccn {

uint64_t
generationIdBase(const ContentName& prefix)
{
  auto h = fnv1a64(prefix.prefix().toUri());
  return (h ^ (h >> 32)) << 32;
}

ContentObject::ContentObject(ContentName prefix, std::span<const uint8_t> data, std::size_t chunkSize,
                             std::size_t window)
  : m_prefix(prefix.prefix())
  , m_chunkSize(chunkSize)
  , m_window(window)
  , m_size(data.size())
{
  if (data.empty() || chunkSize == 0) {
    throw std::domain_error("content object needs data and a positive chunk size");
  }
  for (std::size_t off = 0; off < data.size(); off += chunkSize) {
    auto n = std::min(chunkSize, data.size() - off);
    m_chunks.emplace_back(data.begin() + off, data.begin() + off + n);
  }
  m_generations = nc3n::codingWindow(m_chunks, window, generationIdBase(m_prefix), chunkSize);
}

const Bytes&
ContentObject::chunk(uint32_t index) const
{
  if (index == 0 || index > m_chunks.size()) {
    throw std::out_of_range("chunk index " + std::to_string(index));
  }
  return m_chunks[index - 1];
}

const rlnc::Generation*
ContentObject::findGeneration(rlnc::GenerationId id) const
{
  for (const auto& g : m_generations) {
    if (g.id == id) {
      return &g;
    }
  }
  return nullptr;
}

DataPacket
ContentObject::plainData(uint32_t index) const
{
  return DataPacket{m_prefix.withChunk(index), DEFAULT_SIGNATURE, PlainInfo{index, chunkCount()}, chunk(index)};
}

Bytes
ContentObject::assemble(const std::vector<Bytes>& chunks) const
{
  Bytes out;
  for (std::size_t i = 0; i < chunks.size() && i < m_chunks.size(); ++i) {
    auto n = std::min(chunks[i].size(), m_chunks[i].size());
    out.insert(out.end(), chunks[i].begin(), chunks[i].begin() + n);
  }
  return out;
}

} // namespace nccn::ccn
