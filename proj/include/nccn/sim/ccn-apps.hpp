#ifndef NCCN_SIM_CCN_APPS_HPP
#define NCCN_SIM_CCN_APPS_HPP

#include "nccn/ccn/forwarder.hpp"
#include "nccn/sim/harness.hpp"

namespace nccn::sim {

/// Router or repository running the named-data forwarding engine.
class ForwarderApp : public App
{
public:
  ForwarderApp(Harness& h, NodeIndex self, ccn::ForwarderConfig config);

  ccn::Forwarder&
  forwarder()
  {
    return m_fwd;
  }

  void
  receive(std::size_t face, const Envelope& envelope) override;

  void
  report(Metrics& m) const override;

private:
  void
  execute(const std::vector<ccn::Action>& actions);

  ccn::Forwarder m_fwd;
};

/// Sends a fixed schedule of chunks on every face without being asked.
class PushSource : public App
{
public:
  struct Config
  {
    std::shared_ptr<const ccn::ContentObject> object;
    bool nc = true;
    std::size_t packetsPerFace = 3;
    double spacing = 0.001;
    NodeIndex dest = 0;
  };

  PushSource(Harness& h, NodeIndex self, Config config);

  void
  start() override;

  void
  receive(std::size_t, const Envelope&) override
  {
  }

private:
  Config m_config;
};

/// Passes every frame on to all other faces.
class Relay : public App
{
public:
  using App::App;

  void
  receive(std::size_t face, const Envelope& envelope) override;
};

} // namespace nccn::sim

#endif // NCCN_SIM_CCN_APPS_HPP
