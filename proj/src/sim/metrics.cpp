#include "nccn/sim/metrics.hpp"

namespace nccn::sim {

uint64_t
Metrics::totalTransmissions() const
{
  uint64_t n = 0;
  for (const auto& [_, l] : links) {
    n += l.transmissions;
  }
  return n;
}

nlohmann::json
toJson(const Metrics& m)
{
  using nlohmann::json;
  json j = json::object();
  j["links"] = json::object();
  for (const auto& [name, l] : m.links) {
    j["links"][name] = {{"transmissions", l.transmissions}, {"bytes", l.bytes}, {"losses", l.losses}};
  }
  j["consumers"] = json::object();
  for (const auto& [name, c] : m.consumers) {
    json cj = {
      {"received", c.received},
      {"innovative", c.innovative},
      {"wasted", c.wasted},
      {"lost", c.lost},
      {"addressed", c.addressed},
      {"interests", c.interests},
      {"retransmissions", c.retransmissions},
      {"retrieval_times", c.retrievalTimes},
      {"recovered", c.recovered},
    };
    cj["completion"] = c.completion ? json(*c.completion) : json(nullptr);
    j["consumers"][name] = std::move(cj);
  }
  j["nodes"] = m.nodes;
  j["subscribers"] = m.subscribers;
  j["fp_deliveries"] = m.fpDeliveries;
  j["generation_losses"] = m.generationLosses;
  j["pad_flushes"] = m.padFlushes;
  j["stalls"] = m.stalls;
  j["events"] = m.events;
  j["end_time"] = m.endTime;
  j["total_transmissions"] = m.totalTransmissions();
  return j;
}

namespace {

void
walk(const nlohmann::json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out)
{
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      walk(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    }
  }
  else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      walk(j[i], path + "." + std::to_string(i), out);
    }
  }
  else if (j.is_string()) {
    out.emplace_back(path, j.get<std::string>());
  }
  else {
    out.emplace_back(path, j.dump());
  }
}

} // namespace

std::vector<std::pair<std::string, std::string>>
flatten(const nlohmann::json& j)
{
  std::vector<std::pair<std::string, std::string>> out;
  walk(j, "", out);
  return out;
}

} // namespace nccn::sim
