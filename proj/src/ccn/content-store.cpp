#include "nccn/ccn/content-store.hpp"

namespace nccn::ccn {

ContentStore::ContentStore(std::size_t capacity, CacheMode mode)
  : m_capacity(capacity)
  , m_mode(mode)
{
}

std::size_t
ContentStore::cost(const CsEntry& entry)
{
  return std::visit([] (const auto& e) -> std::size_t {
    using T = std::decay_t<decltype(e)>;
    if constexpr (std::is_same_v<T, DataPacket>) {
      return 1;
    }
    else if constexpr (std::is_same_v<T, nc3n::CodedStoreEntry>) {
      return std::max<std::size_t>(1, e.held().rank());
    }
    else {
      return std::max<std::size_t>(1, e.chunks.size());
    }
  }, entry);
}

void
ContentStore::touch(const std::string& key)
{
  auto& slot = m_slots.at(key);
  m_lru.splice(m_lru.begin(), m_lru, slot.pos);
}

void
ContentStore::settle(const std::string& key)
{
  auto& slot = m_slots.at(key);
  m_used -= slot.cost;
  slot.cost = cost(slot.entry);
  m_used += slot.cost;

  while (m_used > m_capacity && !m_lru.empty()) {
    auto victim = m_lru.back();
    auto it = m_slots.find(victim);
    m_used -= it->second.cost;
    m_lru.pop_back();
    m_slots.erase(it);
    if (victim == key) {
      break;
    }
  }
}

void
ContentStore::put(const std::string& key, CsEntry entry)
{
  auto it = m_slots.find(key);
  if (it != m_slots.end()) {
    it->second.entry = std::move(entry);
    touch(key);
  }
  else {
    m_lru.push_front(key);
    m_slots.emplace(key, Slot{std::move(entry), m_lru.begin(), 0});
  }
  settle(key);
}

CsEntry*
ContentStore::lookup(const std::string& key)
{
  auto it = m_slots.find(key);
  if (it == m_slots.end()) {
    return nullptr;
  }
  touch(key);
  return &it->second.entry;
}

void
ContentStore::insertPlain(const DataPacket& data)
{
  auto* info = data.plain();
  if (info == nullptr || m_capacity == 0) {
    return;
  }
  if (m_mode == CacheMode::ChunkLevel) {
    put(data.name.toUri(), data);
    return;
  }
  auto key = data.name.prefix().toUri();
  ObjectEntry obj;
  if (auto* existing = lookup(key)) {
    if (auto* staged = std::get_if<ObjectEntry>(existing)) {
      obj = *staged;
    }
  }
  obj.finalChunk = std::max(obj.finalChunk, info->finalChunk);
  obj.chunks.insert_or_assign(info->chunkIndex, data);
  put(key, std::move(obj));
}

std::optional<DataPacket>
ContentStore::findPlain(const ContentName& name, uint32_t index)
{
  auto prefix = name.prefix();
  if (auto* e = lookup(prefix.withChunk(index).toUri())) {
    if (auto* data = std::get_if<DataPacket>(e)) {
      return *data;
    }
  }
  if (auto* e = lookup(prefix.toUri())) {
    auto* obj = std::get_if<ObjectEntry>(e);
    if (obj != nullptr && obj->complete()) {
      auto it = obj->chunks.find(index);
      if (it != obj->chunks.end()) {
        return it->second;
      }
    }
  }
  auto ncPrefix = prefix.withNcMarker().toUri() + "#";
  for (auto it = m_slots.lower_bound(ncPrefix); it != m_slots.end() && it->first.starts_with(ncPrefix); ++it) {
    auto* coded = std::get_if<nc3n::CodedStoreEntry>(&it->second.entry);
    if (coded == nullptr) {
      continue;
    }
    if (auto data = coded->plainChunk(index)) {
      touch(it->first);
      return data;
    }
  }
  return std::nullopt;
}

nc3n::CodedStoreEntry*
ContentStore::findCoded(const std::string& key)
{
  auto* e = lookup(key);
  return e ? std::get_if<nc3n::CodedStoreEntry>(e) : nullptr;
}

nc3n::CacheEffect
ContentStore::insertCoded(const std::string& key, const DataPacket& data)
{
  if (m_capacity == 0) {
    return nc3n::CacheEffect::DroppedRedundant;
  }
  auto it = m_slots.find(key);
  if (it == m_slots.end()) {
    auto entry = nc3n::CodedStoreEntry::forData(data);
    auto effect = nc3n::cacheCoded(entry, data);
    put(key, std::move(entry));
    return effect;
  }
  auto& entry = std::get<nc3n::CodedStoreEntry>(it->second.entry);
  auto effect = nc3n::cacheCoded(entry, data);
  touch(key);
  settle(key);
  return effect;
}

std::vector<std::string>
ContentStore::keysByRecency() const
{
  return {m_lru.begin(), m_lru.end()};
}

} // namespace nccn::ccn
