#ifndef NCCN_SIM_CONSUMER_HPP
#define NCCN_SIM_CONSUMER_HPP

#include "nccn/ccn/object.hpp"
#include "nccn/sim/harness.hpp"

#include <map>
#include <set>

namespace nccn::sim {

/// What a consumer knows about an object before fetching it.
struct ObjectManifest
{
  struct Gen
  {
    rlnc::GenerationId id;
    std::size_t k = 0;
    uint32_t firstChunk = 1; ///< 1-based
  };

  ccn::ContentName prefix;
  uint32_t chunkCount = 0;
  std::size_t chunkSize = 0;
  std::size_t size = 0; ///< object bytes
  std::vector<Gen> generations;

  static ObjectManifest
  of(const ccn::ContentObject& object);
};

enum class RequestMode {
  Round,    ///< one Interest per face, next round once all are answered or abandoned
  Pipeline, ///< keep a window of Interests in flight
  Passive,  ///< never requests; only absorbs pushed chunks
};

struct ConsumerConfig
{
  ObjectManifest manifest;
  bool nc = true;
  RequestMode mode = RequestMode::Round;
  std::size_t rounds = 0;     ///< Round mode: stop after this many rounds; 0 = until complete
  std::size_t window = 1;     ///< Pipeline mode: NC Interests per face, or distinct chunks without NC
  double initialRtt = 1.0;    ///< seconds, before any sample
  unsigned maxRetries = 16;
  double startTime = 0;
};

/** \brief End host fetching one object over all of its faces.
 *
 *  Every arrival goes through a per-generation decoder: a plain chunk is a
 *  unit-vector combination. A chunk is useful when it raises the rank.
 *  Unanswered Interests are re-sent after twice the face's RTT estimate.
 *
 *  Without NC the consumer asks for the same chunk on every face, since it
 *  cannot know which face will deliver.
 */
class Consumer : public App
{
public:
  Consumer(Harness& h, NodeIndex self, ConsumerConfig config);

  void
  start() override;

  void
  receive(std::size_t face, const Envelope& envelope) override;

  void
  report(Metrics& m) const override;

  bool
  complete() const
  {
    return m_completion.has_value();
  }

  /// decoded object bytes
  /// \throw rlnc::InsufficientDof when incomplete
  Bytes
  object() const;

private:
  struct Request
  {
    std::size_t face;
    bool coded;
    std::size_t gen;    ///< coded: generation index
    uint32_t chunk = 0; ///< plain: chunk index
    double sentAt = 0;
    unsigned retries = 0;
    bool open = true;
  };

  void
  issue(std::size_t face, bool coded, std::size_t gen, uint32_t chunk);

  void
  transmit(uint64_t id);

  void
  onTimeout(uint64_t id, unsigned attempt);

  void
  resolve(uint64_t id);

  void
  fill();

  void
  startRound();

  std::optional<std::size_t>
  nextCodedGeneration(bool respectOutstanding) const;

  std::optional<uint32_t>
  nextMissingChunk(bool skipRequested) const;

  std::size_t
  generationOf(uint32_t chunk) const;

  bool
  have(uint32_t chunk) const;

  std::size_t
  openOn(std::size_t face) const;

  std::size_t
  openFor(std::size_t gen) const;

  /// twice the face's RTT estimate (smoothed RTT plus four deviations)
  double
  rto(std::size_t face) const;

private:
  ConsumerConfig m_config;
  std::vector<rlnc::Decoder> m_decoders;
  std::map<uint64_t, Request> m_requests;
  uint64_t m_nextId = 0;
  std::set<uint32_t> m_inFlightChunks; ///< plain pipeline: distinct chunks requested, not yet held
  std::size_t m_round = 0;
  std::size_t m_roundOpen = 0;
  struct RttEstimate
  {
    double srtt = 0;
    double rttvar = 0;
    bool sampled = false;
  };
  std::vector<RttEstimate> m_rtt; ///< per face
  std::optional<double> m_completion;
  ConsumerMetrics m_stats;
};

} // namespace nccn::sim

#endif // NCCN_SIM_CONSUMER_HPP
