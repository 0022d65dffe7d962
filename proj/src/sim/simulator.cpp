#include "nccn/sim/simulator.hpp"
#include "nccn/common.hpp"

#include <cmath>

namespace nccn::sim {

void
Simulator::schedule(double at, Action action)
{
  if (!(at >= m_now) || std::isnan(at)) {
    throw InvariantViolation("event scheduled in the past");
  }
  m_queue.push(Event{at, m_seq++, std::move(action)});
}

uint64_t
Simulator::run(double until)
{
  uint64_t n = 0;
  while (!m_queue.empty() && m_queue.top().time <= until) {
    // copy out before pop: the action may schedule more events
    Event ev = m_queue.top();
    m_queue.pop();
    m_now = ev.time;
    ev.action();
    ++n;
    ++m_dispatched;
  }
  return n;
}

} // namespace nccn::sim
