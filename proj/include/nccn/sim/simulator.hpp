#ifndef NCCN_SIM_SIMULATOR_HPP
#define NCCN_SIM_SIMULATOR_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

namespace nccn::sim {

/** \brief Discrete-event loop; events run in (time, scheduling order).
 */
class Simulator
{
public:
  using Action = std::function<void()>;

  /// \throw InvariantViolation when \p at lies before now()
  void
  schedule(double at, Action action);

  void
  scheduleIn(double delay, Action action)
  {
    schedule(m_now + delay, std::move(action));
  }

  /// Runs events up to and including time \p until; returns the number dispatched.
  uint64_t
  run(double until = std::numeric_limits<double>::infinity());

  double
  now() const
  {
    return m_now;
  }

  std::size_t
  pending() const
  {
    return m_queue.size();
  }

  uint64_t
  dispatched() const
  {
    return m_dispatched;
  }

private:
  struct Event
  {
    double time;
    uint64_t seq;
    Action action;
  };

  struct Later
  {
    bool
    operator()(const Event& a, const Event& b) const
    {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> m_queue;
  double m_now = 0;
  uint64_t m_seq = 0;
  uint64_t m_dispatched = 0;
};

} // namespace nccn::sim

#endif // NCCN_SIM_SIMULATOR_HPP
