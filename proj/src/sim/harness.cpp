#include "nccn/sim/harness.hpp"
#include "nccn/ccn/trace.hpp"

namespace nccn::sim {

App::App(Harness& harness, NodeIndex self)
  : m_harness(harness)
  , m_self(self)
{
}

void
App::send(std::size_t face, Frame frame, std::optional<NodeIndex> dest)
{
  m_harness.send(m_self, face, Envelope{std::move(frame), dest});
}

void
App::after(double delay, std::function<void()> action)
{
  m_harness.sim().scheduleIn(delay, std::move(action));
}

double
App::now() const
{
  return m_harness.sim().now();
}

const std::string&
App::name() const
{
  return m_harness.topology().nodes()[m_self].name;
}

std::size_t
App::faceCount() const
{
  return m_harness.topology().faces(m_self).size();
}

RandomSource&
App::rng()
{
  return m_harness.rngFor(m_self);
}

Harness::Harness(Topology topology, uint64_t seed, bool trace)
  : m_topology(std::move(topology))
  , m_lossRng(mix64(seed ^ 0x6c6f7373ULL))
  , m_apps(m_topology.nodes().size())
  , m_tracing(trace)
{
  m_topology.validate();
  for (NodeIndex n = 0; n < m_topology.nodes().size(); ++n) {
    m_nodeRng.push_back(std::make_unique<SeededRandom>(mix64(seed + mix64(n + 1))));
  }
  m_network = std::make_unique<Network>(m_sim, m_topology, m_lossRng);
  m_network->onDeliver([this](NodeIndex to, std::size_t face, const Envelope& e) { deliver(to, face, e); });
  m_network->onTransmit([this](std::size_t ch, const Envelope& e, bool lost) {
    if (lost && e.dest) {
      ++m_live.consumers[m_topology.nodes()[*e.dest].name].lost;
    }
    if (m_extraObserver) {
      m_extraObserver(ch, e, lost);
    }
  });
  for (const auto& n : m_topology.nodes()) {
    if (n.role == NodeRole::Consumer) {
      m_live.consumers[n.name];
    }
  }
}

void
Harness::addressed(NodeIndex consumer)
{
  ++m_live.consumers[m_topology.nodes().at(consumer).name].addressed;
}

void
Harness::send(NodeIndex from, std::size_t face, Envelope envelope)
{
  // a Data chunk entering a consumer is addressed to it, unless an origin already said so
  if (!envelope.dest && std::holds_alternative<ccn::DataPacket>(envelope.frame)) {
    auto peer = m_topology.faces(from).at(face).peer;
    if (m_topology.nodes()[peer].role == NodeRole::Consumer) {
      envelope.dest = peer;
      addressed(peer);
    }
  }
  m_network->send(from, face, std::move(envelope));
}

void
Harness::traceLine(std::string line)
{
  if (m_tracing) {
    m_trace += line;
  }
}

void
Harness::deliver(NodeIndex to, std::size_t face, const Envelope& envelope)
{
  if (m_tracing) {
    const auto& node = m_topology.nodes()[to].name;
    double t = m_sim.now();
    if (auto* i = std::get_if<ccn::Interest>(&envelope.frame)) {
      m_trace += ccn::traceLine(t, node, face, *i);
    }
    else if (auto* d = std::get_if<ccn::DataPacket>(&envelope.frame)) {
      m_trace += ccn::traceLine(t, node, face, *d);
    }
    else {
      const auto& b = std::get<BloomFrame>(envelope.frame);
      if (auto* p = std::get_if<bloom::FlowPacket>(&b.body)) {
        m_trace += ccn::traceLine(t, node, "DATA", face, "flow/" + std::to_string(p->flow.value),
                                  std::to_string(p->seq), "");
      }
      else {
        const auto& c = std::get<bloom::CodedFlowPacket>(b.body);
        m_trace += ccn::traceLine(t, node, "DATA", face, "flow/" + std::to_string(c.derived.value),
                                  std::to_string(c.generation), toHex(c.coefficients));
      }
    }
  }
  if (auto& app = m_apps[to]) {
    app->receive(face, envelope);
  }
}

void
Harness::run(double until)
{
  for (auto& app : m_apps) {
    if (app) {
      app->start();
    }
  }
  m_sim.run(until);
}

Metrics
Harness::collect() const
{
  Metrics m = m_live;
  const auto& stats = m_network->stats();
  for (std::size_t ch = 0; ch < stats.size(); ++ch) {
    auto& l = m.links[m_topology.channelLabel(ch)];
    l.transmissions = stats[ch].transmissions;
    l.bytes = stats[ch].bytes;
    l.losses = stats[ch].losses;
  }
  for (const auto& app : m_apps) {
    if (app) {
      app->report(m);
    }
  }
  m.events = m_sim.dispatched();
  m.endTime = m_sim.now();
  return m;
}

} // namespace nccn::sim
