#include "nccn/sim/ccn-apps.hpp"
#include "nccn/nc3n/nc3n.hpp"

namespace nccn::sim {

ForwarderApp::ForwarderApp(Harness& h, NodeIndex self, ccn::ForwarderConfig config)
  : App(h, self)
  , m_fwd(h.topology().faces(self).size(), config, h.rngFor(self))
{
}

void
ForwarderApp::receive(std::size_t face, const Envelope& envelope)
{
  if (const auto* i = std::get_if<ccn::Interest>(&envelope.frame)) {
    execute(m_fwd.onInterest(*i, face, now()));
  }
  else if (const auto* d = std::get_if<ccn::DataPacket>(&envelope.frame)) {
    execute(m_fwd.onData(*d, face, now()));
  }
}

void
ForwarderApp::execute(const std::vector<ccn::Action>& actions)
{
  using namespace ccn::action;
  for (const auto& a : actions) {
    if (const auto* r = std::get_if<ReplyFromStore>(&a)) {
      send(r->face, r->data);
    }
    else if (const auto* fi = std::get_if<ForwardInterest>(&a)) {
      for (auto f : fi->faces) {
        send(f, fi->interest);
      }
    }
    else if (const auto* fd = std::get_if<ForwardData>(&a)) {
      for (auto f : fd->faces) {
        send(f, fd->data);
      }
    }
  }
}

void
ForwarderApp::report(Metrics& m) const
{
  const auto& c = m_fwd.counters();
  m.nodes[name()] = {
    {"interests_in", c.interestsIn},
    {"data_in", c.dataIn},
    {"cs_hits", c.csHits},
    {"cs_misses", c.csMisses},
    {"producer_hits", c.producerHits},
    {"aggregated", c.aggregated},
    {"forwarded", c.forwarded},
    {"broadcasts", c.broadcasts},
    {"duplicate_interests", c.duplicateInterests},
    {"malformed", c.malformed},
    {"no_route", c.noRoute},
    {"duplicate_data", c.duplicateData},
    {"unsolicited_data", c.unsolicitedData},
    {"coded_stored", c.codedStored},
    {"coded_redundant", c.codedRedundant},
    {"coded_decoded", c.codedDecoded},
    {"nc_suppressed", c.ncSuppressed},
    {"pit_expired", c.pitExpired},
  };
}

PushSource::PushSource(Harness& h, NodeIndex self, Config config)
  : App(h, self)
  , m_config(std::move(config))
{
}

void
PushSource::start()
{
  const auto& obj = *m_config.object;
  for (std::size_t i = 0; i < m_config.packetsPerFace; ++i) {
    for (std::size_t f = 0; f < faceCount(); ++f) {
      after(static_cast<double>(i) * m_config.spacing, [this, i, f, &obj] {
        ccn::DataPacket data;
        if (m_config.nc) {
          // single-generation push: mixes every chunk of the first generation
          data = nc3n::makeCodedData(obj.prefix(), rlnc::encodeRandom(obj.generations().front(), rng()));
        }
        else {
          data = obj.plainData(static_cast<uint32_t>(i % obj.chunkCount()) + 1);
        }
        m_harness.addressed(m_config.dest);
        send(f, std::move(data), m_config.dest);
      });
    }
  }
}

void
Relay::receive(std::size_t face, const Envelope& envelope)
{
  for (std::size_t f = 0; f < faceCount(); ++f) {
    if (f != face) {
      send(f, envelope.frame, envelope.dest);
    }
  }
}

} // namespace nccn::sim
