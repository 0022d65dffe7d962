#ifndef NCCN_SIM_HARNESS_HPP
#define NCCN_SIM_HARNESS_HPP

#include "nccn/sim/metrics.hpp"
#include "nccn/sim/network.hpp"

#include <memory>

namespace nccn::sim {

class Harness;

/** \brief Behavior installed on one node: reacts to arrivals, may send and set timers.
 */
class App
{
public:
  App(Harness& harness, NodeIndex self);

  virtual
  ~App() = default;

  virtual void
  start()
  {
  }

  virtual void
  receive(std::size_t face, const Envelope& envelope) = 0;

  /// Adds this node's counters to \p m at the end of a run.
  virtual void
  report(Metrics& m) const
  {
    (void)m;
  }

protected:
  void
  send(std::size_t face, Frame frame, std::optional<NodeIndex> dest = std::nullopt);

  void
  after(double delay, std::function<void()> action);

  double
  now() const;

  const std::string&
  name() const;

  std::size_t
  faceCount() const;

  RandomSource&
  rng();

protected:
  Harness& m_harness;
  NodeIndex m_self;
};

/** \brief One simulation instance: topology, event loop, network, node apps
 *         and the metrics and trace they produce.
 */
class Harness
{
public:
  Harness(Topology topology, uint64_t seed, bool trace);

  Harness(const Harness&) = delete;
  Harness& operator=(const Harness&) = delete;

  template<typename T, typename... Args>
  T&
  install(NodeIndex node, Args&&... args)
  {
    auto app = std::make_unique<T>(*this, node, std::forward<Args>(args)...);
    T& ref = *app;
    m_apps.at(node) = std::move(app);
    return ref;
  }

  /// Starts every app in node order, then runs the event loop.
  void
  run(double until = std::numeric_limits<double>::infinity());

  Metrics
  collect() const;

  /// live counters apps may bump during the run
  Metrics&
  live()
  {
    return m_live;
  }

  /// Counts a chunk an origin has sent toward \p consumer.
  void
  addressed(NodeIndex consumer);

  void
  send(NodeIndex from, std::size_t face, Envelope envelope);

  /// Extra observer called for every transmission (after loss is decided).
  void
  observeTransmissions(Network::Observe observer)
  {
    m_extraObserver = std::move(observer);
  }

  void
  traceLine(std::string line);

  const std::string&
  trace() const
  {
    return m_trace;
  }

  Simulator&
  sim()
  {
    return m_sim;
  }

  Network&
  network()
  {
    return *m_network;
  }

  const Topology&
  topology() const
  {
    return m_topology;
  }

  RandomSource&
  rngFor(NodeIndex node)
  {
    return *m_nodeRng.at(node);
  }

private:
  void
  deliver(NodeIndex to, std::size_t face, const Envelope& envelope);

private:
  Topology m_topology;
  Simulator m_sim;
  SeededRandom m_lossRng;
  std::vector<std::unique_ptr<SeededRandom>> m_nodeRng;
  std::unique_ptr<Network> m_network;
  std::vector<std::unique_ptr<App>> m_apps;
  Network::Observe m_extraObserver;
  Metrics m_live;
  bool m_tracing;
  std::string m_trace;
};

} // namespace nccn::sim

#endif // NCCN_SIM_HARNESS_HPP
