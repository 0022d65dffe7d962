#ifndef NCCN_CCN_FORWARDER_HPP
#define NCCN_CCN_FORWARDER_HPP

#include "nccn/ccn/content-store.hpp"
#include "nccn/ccn/fib.hpp"
#include "nccn/ccn/object.hpp"
#include "nccn/ccn/pit.hpp"

#include <deque>
#include <memory>
#include <set>

namespace nccn::ccn {

enum class Strategy {
  BestRoute, ///< first FIB next hop other than the incoming face
  Multicast, ///< every FIB next hop other than the incoming face
};

struct ForwarderConfig
{
  bool ncEnabled = true;   ///< understands NC Interests and coded Data
  bool cacheCoded = true;  ///< keep coded chunks in the Content Store
  bool cachePlain = true;
  std::size_t csCapacity = 64;
  CacheMode cacheMode = CacheMode::ChunkLevel;
  double pitLifetime = 4.0;
  std::size_t nonceMemory = 1 << 16;
  bool learnRoutes = true; ///< add a FIB entry for the face that answered a broadcast
  Strategy strategy = Strategy::BestRoute;
};

namespace action {

struct ReplyFromStore
{
  FaceId face;
  DataPacket data;
};

struct Aggregate
{
  FaceId face;
};

struct ForwardInterest
{
  std::vector<FaceId> faces;
  Interest interest;
  bool broadcast = false;
};

enum class DropReason {
  Duplicate,
  Malformed,
  NoRoute,
};

struct DropInterest
{
  DropReason reason;
};

struct ForwardData
{
  std::vector<FaceId> faces;
  DataPacket data;
};

enum class CacheKind {
  Plain,
  Coded,
};

struct CacheInsert
{
  CacheKind kind;
  std::optional<nc3n::CacheEffect> effect; ///< set for coded data
};

enum class DiscardReason {
  Duplicate,   ///< late copy of data already delivered
  Unsolicited, ///< no pending or recently satisfied Interest
  Malformed,
};

struct DiscardData
{
  DiscardReason reason;
};

} // namespace action

using Action = std::variant<action::ReplyFromStore, action::Aggregate, action::ForwardInterest,
                            action::DropInterest, action::ForwardData, action::CacheInsert,
                            action::DiscardData>;

struct ForwarderCounters
{
  uint64_t interestsIn = 0;
  uint64_t dataIn = 0;
  uint64_t csHits = 0;
  uint64_t csMisses = 0;
  uint64_t producerHits = 0;
  uint64_t aggregated = 0;
  uint64_t forwarded = 0;
  uint64_t broadcasts = 0;
  uint64_t duplicateInterests = 0;
  uint64_t malformed = 0;
  uint64_t noRoute = 0;
  uint64_t duplicateData = 0;
  uint64_t unsolicitedData = 0;
  uint64_t codedStored = 0;
  uint64_t codedRedundant = 0;
  uint64_t codedDecoded = 0;
  uint64_t ncSuppressed = 0; ///< NC Interests a cache could not add a DoF to
  uint64_t pitExpired = 0;
};

/** \brief Named-data forwarding engine of one node, including NC3N behaviors.
 *
 *  Interest pipeline, in fixed order: duplicate-nonce drop, Content Store /
 *  local producer lookup, PIT aggregation, FIB longest-prefix forwarding, and
 *  one-hop broadcast when no route exists. Data pipeline: PIT match and
 *  reverse-path forwarding plus caching; late copies are cached (coded) or
 *  discarded (plain); everything else is unsolicited.
 *
 *  The engine returns actions; it never transmits by itself.
 */
class Forwarder
{
public:
  Forwarder(std::size_t faceCount, ForwarderConfig config, RandomSource& rng);

  std::vector<Action>
  onInterest(const Interest& interest, FaceId inFace, double now);

  std::vector<Action>
  onData(const DataPacket& data, FaceId inFace, double now);

  /// Serve \p object authoritatively (this node becomes a repository for it).
  void
  addProducer(std::shared_ptr<const ContentObject> object);

  Fib&
  fib()
  {
    return m_fib;
  }

  Pit&
  pit()
  {
    return m_pit;
  }

  ContentStore&
  cs()
  {
    return m_cs;
  }

  const ForwarderConfig&
  config() const
  {
    return m_config;
  }

  const ForwarderCounters&
  counters() const
  {
    return m_counters;
  }

  std::size_t
  faceCount() const
  {
    return m_faceCount;
  }

private:
  bool
  seenNonce(const Interest& interest);

  std::optional<DataPacket>
  lookupLocal(const Interest& interest);

  const ContentObject*
  findProducer(const ContentName& name) const;

  void
  cacheData(const DataPacket& data, std::vector<Action>& actions);

private:
  std::size_t m_faceCount;
  ForwarderConfig m_config;
  RandomSource& m_rng;
  Fib m_fib;
  Pit m_pit;
  ContentStore m_cs;
  std::vector<std::shared_ptr<const ContentObject>> m_producers;
  std::set<std::pair<std::string, uint64_t>> m_nonces;
  std::deque<std::pair<std::string, uint64_t>> m_nonceOrder;
  ForwarderCounters m_counters;
};

} // namespace nccn::ccn

#endif // NCCN_CCN_FORWARDER_HPP
