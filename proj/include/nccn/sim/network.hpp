#ifndef NCCN_SIM_NETWORK_HPP
#define NCCN_SIM_NETWORK_HPP

#include "nccn/common.hpp"
#include "nccn/sim/frame.hpp"
#include "nccn/sim/simulator.hpp"

#include <set>

namespace nccn::sim {

struct ChannelStats
{
  uint64_t transmissions = 0;
  uint64_t bytes = 0;
  uint64_t losses = 0;
};

/** \brief Directed channels with latency, FIFO serialization and loss.
 *
 *  A frame occupies its channel for size/capacity seconds after every frame
 *  sent before it, then arrives one latency later. Lost frames still occupy
 *  the channel. Scripted drops name a channel and the 1-based ordinal of the
 *  frame on it; the Bernoulli draw is made only on lossy channels.
 */
class Network
{
public:
  using Deliver = std::function<void(NodeIndex to, std::size_t face, const Envelope&)>;
  using Observe = std::function<void(std::size_t channel, const Envelope&, bool lost)>;

  Network(Simulator& sim, const Topology& topo, RandomSource& lossRng);

  void
  onDeliver(Deliver d)
  {
    m_deliver = std::move(d);
  }

  void
  onTransmit(Observe o)
  {
    m_observe = std::move(o);
  }

  void
  send(NodeIndex from, std::size_t face, Envelope envelope);

  void
  scriptDrop(std::size_t channel, uint64_t ordinal);

  const std::vector<ChannelStats>&
  stats() const
  {
    return m_stats;
  }

private:
  Simulator& m_sim;
  const Topology& m_topo;
  RandomSource& m_lossRng;
  Deliver m_deliver;
  Observe m_observe;
  std::vector<ChannelStats> m_stats;
  std::vector<double> m_busyUntil;
  std::vector<std::size_t> m_arrivalFace;
  std::set<std::pair<std::size_t, uint64_t>> m_drops;
};

} // namespace nccn::sim

#endif // NCCN_SIM_NETWORK_HPP
