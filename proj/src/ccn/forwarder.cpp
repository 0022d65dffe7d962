#include "nccn/ccn/forwarder.hpp"

#include <algorithm>

namespace nccn::ccn {

Forwarder::Forwarder(std::size_t faceCount, ForwarderConfig config, RandomSource& rng)
  : m_faceCount(faceCount)
  , m_config(config)
  , m_rng(rng)
  , m_pit(config.pitLifetime)
  , m_cs(config.csCapacity, config.cacheMode)
{
}

void
Forwarder::addProducer(std::shared_ptr<const ContentObject> object)
{
  m_producers.push_back(std::move(object));
}

const ContentObject*
Forwarder::findProducer(const ContentName& name) const
{
  for (const auto& obj : m_producers) {
    if (obj->prefix().components() == name.components()) {
      return obj.get();
    }
  }
  return nullptr;
}

bool
Forwarder::seenNonce(const Interest& interest)
{
  auto key = std::make_pair(interest.name.toUri(), interest.nonce);
  if (m_nonces.count(key) != 0) {
    return true;
  }
  m_nonces.insert(key);
  m_nonceOrder.push_back(key);
  while (m_nonceOrder.size() > m_config.nonceMemory) {
    m_nonces.erase(m_nonceOrder.front());
    m_nonceOrder.pop_front();
  }
  return false;
}

std::optional<DataPacket>
Forwarder::lookupLocal(const Interest& interest)
{
  auto req = resolveImplicit(interest.name);
  const auto* producer = findProducer(interest.name);

  if (req.kind == RequestKind::Plain) {
    if (auto hit = m_cs.findPlain(interest.name, req.index)) {
      ++m_counters.csHits;
      return hit;
    }
    if (producer != nullptr && req.index <= producer->chunkCount()) {
      ++m_counters.producerHits;
      return producer->plainData(req.index);
    }
    ++m_counters.csMisses;
    return std::nullopt;
  }

  if (!m_config.ncEnabled) {
    ++m_counters.csMisses;
    return std::nullopt;
  }
  const auto& digest = *interest.selector.digest;
  if (producer != nullptr) {
    if (const auto* gen = producer->findGeneration(digest.generation); gen != nullptr && gen->k() == digest.k) {
      ++m_counters.producerHits;
      return nc3n::respondNc(producer->prefix(), *gen, interest, m_rng);
    }
  }
  if (auto* entry = m_cs.findCoded(pitKey(interest))) {
    if (entry->held().k() == digest.k) {
      if (auto reply = nc3n::respondNc(*entry, interest, m_rng)) {
        ++m_counters.csHits;
        return reply;
      }
      ++m_counters.ncSuppressed;
    }
  }
  ++m_counters.csMisses;
  return std::nullopt;
}

std::vector<Action>
Forwarder::onInterest(const Interest& interest, FaceId inFace, double now)
{
  using namespace action;
  ++m_counters.interestsIn;
  m_counters.pitExpired += m_pit.expire(now);

  if (checkInterest(interest)) {
    ++m_counters.malformed;
    return {DropInterest{DropReason::Malformed}};
  }
  if (seenNonce(interest)) {
    ++m_counters.duplicateInterests;
    return {DropInterest{DropReason::Duplicate}};
  }

  if (auto local = lookupLocal(interest)) {
    return {ReplyFromStore{inFace, std::move(*local)}};
  }

  auto key = pitKey(interest);
  PitEntry* entry = nullptr;
  if (auto* pending = m_pit.find(key)) {
    for (auto& e : *pending) {
      if (!e.hasInFace(inFace)) {
        e.addInFace(inFace);
        e.nonces.push_back(interest.nonce);
        ++m_counters.aggregated;
        return {Aggregate{inFace}};
      }
    }
    if (!interest.selector.ncFlag) {
      // same face asks again with a fresh nonce: retransmission
      entry = &pending->back();
      entry->nonces.push_back(interest.nonce);
      entry->expiry = now + m_pit.lifetime();
    }
  }
  bool created = false;
  if (entry == nullptr) {
    entry = &m_pit.create(key, now);
    entry->addInFace(inFace);
    entry->nonces.push_back(interest.nonce);
    created = true;
  }

  std::vector<FaceId> faces;
  bool broadcast = false;
  if (const auto* hops = m_fib.longestPrefixMatch(interest.name)) {
    for (auto f : *hops) {
      if (f != inFace) {
        faces.push_back(f);
        if (m_config.strategy == Strategy::BestRoute) {
          break;
        }
      }
    }
  }
  else {
    broadcast = true;
    for (FaceId f = 0; f < m_faceCount; ++f) {
      if (f != inFace) {
        faces.push_back(f);
      }
    }
  }

  if (faces.empty()) {
    if (created) {
      m_pit.dropNewest(key);
    }
    ++m_counters.noRoute;
    return {DropInterest{DropReason::NoRoute}};
  }
  for (auto f : faces) {
    entry->addOutFace(f);
  }
  ++m_counters.forwarded;
  if (broadcast) {
    ++m_counters.broadcasts;
  }
  return {ForwardInterest{std::move(faces), interest, broadcast}};
}

void
Forwarder::cacheData(const DataPacket& data, std::vector<Action>& actions)
{
  using namespace action;
  if (!data.isCoded()) {
    if (m_config.cachePlain) {
      m_cs.insertPlain(data);
      actions.push_back(CacheInsert{CacheKind::Plain, std::nullopt});
    }
    return;
  }
  if (!m_config.ncEnabled || !m_config.cacheCoded) {
    return;
  }
  auto effect = m_cs.insertCoded(pitKey(data), data);
  switch (effect) {
    case nc3n::CacheEffect::StoredInnovative:
      ++m_counters.codedStored;
      break;
    case nc3n::CacheEffect::DroppedRedundant:
      ++m_counters.codedRedundant;
      break;
    case nc3n::CacheEffect::Decoded:
      ++m_counters.codedStored;
      ++m_counters.codedDecoded;
      break;
  }
  actions.push_back(CacheInsert{CacheKind::Coded, effect});
}

std::vector<Action>
Forwarder::onData(const DataPacket& data, FaceId inFace, double now)
{
  using namespace action;
  ++m_counters.dataIn;
  m_counters.pitExpired += m_pit.expire(now);

  if (checkData(data)) {
    ++m_counters.malformed;
    return {DiscardData{DiscardReason::Malformed}};
  }

  auto key = pitKey(data);
  std::vector<Action> actions;
  auto learn = [&] {
    if (m_config.learnRoutes && m_fib.longestPrefixMatch(data.name) == nullptr) {
      m_fib.addNextHop(data.name.prefix(), inFace);
    }
  };

  if (auto entry = m_pit.consume(key, inFace, now)) {
    learn();
    std::vector<FaceId> faces;
    for (auto f : entry->inFaces) {
      if (f != inFace) {
        faces.push_back(f);
      }
    }
    if (!faces.empty()) {
      actions.push_back(ForwardData{std::move(faces), data});
    }
    cacheData(data, actions);
    return actions;
  }

  if (m_pit.takeStraggler(key, inFace, now)) {
    learn();
    if (data.isCoded() && m_config.ncEnabled) {
      cacheData(data, actions);
      if (!actions.empty()) {
        return actions;
      }
    }
    ++m_counters.duplicateData;
    return {DiscardData{DiscardReason::Duplicate}};
  }

  ++m_counters.unsolicitedData;
  return {DiscardData{DiscardReason::Unsolicited}};
}

} // namespace nccn::ccn
