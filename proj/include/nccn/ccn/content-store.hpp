#ifndef NCCN_CCN_CONTENT_STORE_HPP
#define NCCN_CCN_CONTENT_STORE_HPP

#include "nccn/nc3n/nc3n.hpp"

#include <list>
#include <map>

namespace nccn::ccn {

enum class CacheMode {
  ChunkLevel,  ///< individual chunks are served as soon as they are cached
  WholeObject, ///< chunks of an object are served only once all are present
};

/// Staging area for whole-object caching.
struct ObjectEntry
{
  std::map<uint32_t, DataPacket> chunks;
  uint32_t finalChunk = 0;

  bool
  complete() const
  {
    return finalChunk != 0 && chunks.size() == finalChunk;
  }
};

using CsEntry = std::variant<DataPacket, nc3n::CodedStoreEntry, ObjectEntry>;

/** \brief Exact-LRU cache whose capacity is counted in chunks.
 *
 *  A plain chunk costs 1, a coded entry costs its rank, a staged object the
 *  number of chunks it holds. The total never exceeds the capacity; an entry
 *  that alone would exceed it is not kept.
 */
class ContentStore
{
public:
  explicit
  ContentStore(std::size_t capacity, CacheMode mode = CacheMode::ChunkLevel);

  void
  insertPlain(const DataPacket& data);

  /// Plain chunk from a cached chunk, a complete staged object, or a decoded coded entry.
  std::optional<DataPacket>
  findPlain(const ContentName& name, uint32_t index);

  nc3n::CodedStoreEntry*
  findCoded(const std::string& key);

  /// Absorbs coded \p data under \p key, creating the entry if needed.
  nc3n::CacheEffect
  insertCoded(const std::string& key, const DataPacket& data);

  /// Lookup that refreshes recency.
  CsEntry*
  lookup(const std::string& key);

  /// Insert or replace, then evict down to capacity.
  void
  put(const std::string& key, CsEntry entry);

  bool
  contains(const std::string& key) const
  {
    return m_slots.count(key) != 0;
  }

  std::size_t
  used() const
  {
    return m_used;
  }

  std::size_t
  capacity() const
  {
    return m_capacity;
  }

  std::size_t
  entryCount() const
  {
    return m_slots.size();
  }

  CacheMode
  mode() const
  {
    return m_mode;
  }

  /// most recently used first
  std::vector<std::string>
  keysByRecency() const;

  static std::size_t
  cost(const CsEntry& entry);

private:
  void
  touch(const std::string& key);

  /// Recomputes the cost of \p key and evicts least-recent entries to fit.
  void
  settle(const std::string& key);

private:
  struct Slot
  {
    CsEntry entry;
    std::list<std::string>::iterator pos;
    std::size_t cost = 0;
  };

  std::size_t m_capacity;
  CacheMode m_mode;
  std::size_t m_used = 0;
  std::list<std::string> m_lru; // front is most recent
  std::map<std::string, Slot> m_slots;
};

} // namespace nccn::ccn

#endif
