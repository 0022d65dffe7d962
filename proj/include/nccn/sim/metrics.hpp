#ifndef NCCN_SIM_METRICS_HPP
#define NCCN_SIM_METRICS_HPP

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nccn::sim {

struct LinkMetrics
{
  uint64_t transmissions = 0;
  uint64_t bytes = 0;
  uint64_t losses = 0;
};

/// Per-consumer counters. innovative + wasted = received; received + lost = addressed.
struct ConsumerMetrics
{
  uint64_t received = 0;
  uint64_t innovative = 0; ///< chunks that added information
  uint64_t wasted = 0;     ///< duplicates and redundant combinations
  uint64_t lost = 0;       ///< chunks meant for this consumer that a link dropped
  uint64_t addressed = 0;
  uint64_t interests = 0;
  uint64_t retransmissions = 0;
  std::optional<double> completion;
  std::vector<double> retrievalTimes; ///< per useful chunk, request to arrival
  std::vector<uint32_t> recovered;    ///< chunk indices the consumer can reproduce
};

struct Metrics
{
  std::map<std::string, LinkMetrics> links;
  std::map<std::string, ConsumerMetrics> consumers;
  std::map<std::string, std::map<std::string, uint64_t>> nodes;
  std::map<std::string, std::map<std::string, uint64_t>> subscribers;
  uint64_t fpDeliveries = 0;
  uint64_t generationLosses = 0;
  uint64_t padFlushes = 0;
  uint64_t stalls = 0;
  uint64_t events = 0;
  double endTime = 0;

  uint64_t
  totalTransmissions() const;
};

/// Keys come out sorted, so equal metrics serialize identically.
nlohmann::json
toJson(const Metrics& m);

/// Leaf values of \p j as (dotted path, text) rows.
std::vector<std::pair<std::string, std::string>>
flatten(const nlohmann::json& j);

} // namespace nccn::sim

#endif // NCCN_SIM_METRICS_HPP
