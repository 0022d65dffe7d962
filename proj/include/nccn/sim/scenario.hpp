#ifndef NCCN_SIM_SCENARIO_HPP
#define NCCN_SIM_SCENARIO_HPP

#include "nccn/sim/bloom-apps.hpp"
#include "nccn/sim/metrics.hpp"
#include "nccn/sim/topology.hpp"

#include <filesystem>

namespace nccn::sim {

enum class ScenarioKind {
  Fig1,           ///< push over two lossy paths to one receiver
  Multipath,      ///< one consumer, two repositories on separate interfaces
  CachingDelay,   ///< consumer behind a cache-less router with two repositories upstream
  RateAdditivity, ///< two interfaces of unequal capacity, pipelined requests
  BloomFp,        ///< two overlapping multicast trees on the Bloom-filter plane
};

std::string_view
kindName(ScenarioKind kind);

struct ScriptedDrop
{
  std::string channel; ///< "A->B"
  uint64_t ordinal;    ///< 1-based transmission count on that channel
};

/// Changes to one canonical link; unset fields keep the canonical value.
struct LinkOverride
{
  std::string a;
  std::string b;
  std::optional<double> latency;
  std::optional<double> capacity;
  std::optional<double> loss;
};

struct ScenarioConfig
{
  ScenarioKind kind = ScenarioKind::Fig1;
  std::string name;
  uint64_t seed = 1;
  bool compare = false;
  double until = 60;

  std::size_t k = 0; ///< 0: scenario default
  std::size_t chunkSize = 1024;
  bool nc = true;

  nlohmann::json workload = nlohmann::json::object();
  std::vector<LinkOverride> linkOverrides;
  std::optional<std::vector<ScriptedDrop>> drops; ///< unset: scenario default
};

/// \throw ConfigError naming the offending key
ScenarioConfig
parseScenario(const nlohmann::json& j);

/// \throw ConfigError, with line and column for malformed JSON
ScenarioConfig
loadScenario(const std::filesystem::path& path);

struct ArmResult
{
  std::string arm; ///< "nc_on" or "nc_off"
  Metrics metrics;
  nlohmann::json summary;
  std::string trace;
  /// Bloom scenarios: what each subscriber received, sorted
  std::map<std::string, std::vector<BloomPlan::Delivery>> deliveries;
};

struct ScenarioResult
{
  ScenarioConfig config;
  std::vector<ArmResult> arms;

  const ArmResult&
  arm(std::string_view name) const;

  nlohmann::json
  toJson() const;

  /// scenario,arm,seed,metric,value rows with a header line
  std::string
  toCsv() const;
};

/// Builds the scenario's topology (canonical shape plus overrides).
Topology
buildTopology(const ScenarioConfig& config);

/// Runs both arms when config.compare is set, else the arm selected by config.nc.
ScenarioResult
runScenario(const ScenarioConfig& config, bool trace);

} // namespace nccn::sim

#endif // NCCN_SIM_SCENARIO_HPP
