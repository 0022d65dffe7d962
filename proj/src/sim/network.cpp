#include "nccn/sim/network.hpp"

#include <algorithm>

namespace nccn::sim {

double
chunksOf(const Frame& frame)
{
  return std::holds_alternative<ccn::Interest>(frame) ? 0.0 : 1.0;
}

std::size_t
bytesOf(const Frame& frame)
{
  return std::visit(
    [](const auto& f) -> std::size_t {
      using T = std::decay_t<decltype(f)>;
      if constexpr (std::is_same_v<T, BloomFrame>) {
        std::size_t body = std::visit(
          [](const auto& b) -> std::size_t {
            using B = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<B, bloom::CodedFlowPacket>) {
              return bloom::encodeCoded(b).size();
            }
            else {
              return 8 + 4 + b.payload.size();
            }
          },
          f.body);
        return bloom::FILTER_BITS / 8 + body;
      }
      else {
        return ccn::wireSize(f);
      }
    },
    frame);
}

Network::Network(Simulator& sim, const Topology& topo, RandomSource& lossRng)
  : m_sim(sim)
  , m_topo(topo)
  , m_lossRng(lossRng)
  , m_stats(topo.channelCount())
  , m_busyUntil(topo.channelCount(), 0.0)
  , m_arrivalFace(topo.channelCount(), 0)
{
  for (NodeIndex n = 0; n < topo.nodes().size(); ++n) {
    const auto& fs = topo.faces(n);
    for (std::size_t f = 0; f < fs.size(); ++f) {
      // the channel arriving on this face is the reverse of the outgoing one
      m_arrivalFace[fs[f].channel ^ 1] = f;
    }
  }
}

void
Network::scriptDrop(std::size_t channel, uint64_t ordinal)
{
  m_drops.insert({channel, ordinal});
}

void
Network::send(NodeIndex from, std::size_t face, Envelope envelope)
{
  const auto& out = m_topo.faces(from).at(face);
  const auto& link = m_topo.links()[out.link];
  auto ch = out.channel;
  auto& st = m_stats[ch];
  ++st.transmissions;
  st.bytes += bytesOf(envelope.frame);

  double start = std::max(m_sim.now(), m_busyUntil[ch]);
  double done = start;
  if (link.capacity) {
    done += chunksOf(envelope.frame) / *link.capacity;
  }
  m_busyUntil[ch] = done;

  bool lost = m_drops.count({ch, st.transmissions}) != 0;
  if (!lost && link.loss > 0) {
    lost = m_lossRng.uniform() < link.loss;
  }
  if (m_observe) {
    m_observe(ch, envelope, lost);
  }
  if (lost) {
    ++st.losses;
    return;
  }
  auto to = out.peer;
  auto inFace = m_arrivalFace[ch];
  m_sim.schedule(done + link.latency, [this, to, inFace, env = std::move(envelope)] {
    if (m_deliver) {
      m_deliver(to, inFace, env);
    }
  });
}

} // namespace nccn::sim
