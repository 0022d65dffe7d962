#ifndef NCCN_SIM_BLOOM_APPS_HPP
#define NCCN_SIM_BLOOM_APPS_HPP

#include "nccn/bloom/nc-border.hpp"
#include "nccn/sim/harness.hpp"

#include <deque>
#include <map>
#include <set>

namespace nccn::sim {

/// Forwarding-plane state shared by all nodes of one run.
struct BloomPlan
{
  uint64_t linkSeed = 0;
  std::optional<bloom::NcBinding> binding;
  /// edge sets the filters were built from, indexed by BloomFrame::intended
  std::vector<std::set<bloom::DirectedEdge>> edgeSets;
  std::map<NodeIndex, std::set<uint64_t>> subscriptions;
  double generationTimeout = 1.0;

  struct Delivery
  {
    uint64_t flow;
    uint32_t seq;
    uint64_t payloadHash;

    friend auto
    operator<=>(const Delivery&, const Delivery&) = default;
  };
  std::map<NodeIndex, std::vector<Delivery>> deliveries;
};

struct BloomSourceSpec
{
  bloom::FlowId flow;
  bloom::ZFilter filter;
  std::size_t intended = 0;
  std::size_t packets = 0;
  double period = 0.01;
  double start = 0;
  std::size_t minPayload = 1;
  std::size_t maxPayload = 1;
};

/** \brief Node of the Bloom-filter plane.
 *
 *  Forwards a frame on every face (except the arrival face) whose outgoing
 *  LinkId matches the frame's filter, drops frames it has already seen,
 *  delivers to local subscribers, and plays the ingress or egress role when
 *  the plan's binding names this node.
 */
class BloomNode : public App
{
public:
  BloomNode(Harness& h, NodeIndex self, BloomPlan& plan, std::vector<BloomSourceSpec> sources = {});

  void
  start() override;

  void
  receive(std::size_t face, const Envelope& envelope) override;

private:
  using PacketKey = std::tuple<uint64_t, uint32_t, uint64_t>;

  static PacketKey
  keyOf(const BloomFrame& frame);

  /// true the first time this node sees the frame
  bool
  firstSight(const BloomFrame& frame);

  void
  forward(const BloomFrame& frame, std::optional<std::size_t> except);

  void
  handlePlain(const BloomFrame& frame, std::optional<std::size_t> arrival);

  void
  ingress(const bloom::FlowPacket& pkt, bool last);

  void
  tryEmit();

  void
  egress(const bloom::CodedFlowPacket& pkt, std::size_t arrival);

  void
  emitSource(std::size_t source, std::size_t seq);

private:
  BloomPlan& m_plan;
  std::vector<BloomSourceSpec> m_sources;
  std::vector<bloom::LinkId> m_faceIds;
  std::set<PacketKey> m_seen;

  struct FlowQueue
  {
    std::map<uint32_t, bloom::FlowPacket> pending;
    std::optional<uint32_t> maxSeq;
    bool ended = false;
  };
  FlowQueue m_a;
  FlowQueue m_b;
  uint32_t m_nextGen = 0;
  std::optional<bloom::EgressDecoder> m_egress;
};

} // namespace nccn::sim

#endif // NCCN_SIM_BLOOM_APPS_HPP
