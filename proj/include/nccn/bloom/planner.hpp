#ifndef NCCN_BLOOM_PLANNER_HPP
#define NCCN_BLOOM_PLANNER_HPP

#include "nccn/bloom/nc-border.hpp"

namespace nccn::bloom {

/// Undirected graph; every link can be used in both directions.
struct Graph
{
  std::size_t nodeCount = 0;
  std::vector<std::pair<NodeId, NodeId>> links;

  std::vector<std::vector<NodeId>>
  adjacency() const;
};

/// Delivery tree from \p root to every subscriber along BFS shortest paths
/// (ties broken toward the lower node id). Edges are directed away from the root.
/// \throw std::domain_error when a subscriber is unreachable
std::vector<DirectedEdge>
deliveryTree(const Graph& graph, NodeId root, std::span<const NodeId> subscribers);

enum class Trigger {
  FalsePositiveRate,
  Congestion,
  Resilience,
};

struct TriggerContext
{
  Trigger trigger = Trigger::FalsePositiveRate;
  double fpThreshold = 0.01;        ///< per-tree estimate that fires FalsePositiveRate
  double congestionThreshold = 0.9; ///< offered load / capacity that fires Congestion
  std::map<DirectedEdge, double> utilization;
};

/// Largest connected component of the edges both trees use.
std::vector<DirectedEdge>
sharedPartition(std::span<const DirectedEdge> treeA, std::span<const DirectedEdge> treeB);

/** \brief Binds flows A and B into a coded flow over their shared partition
 *         when the trigger fires.
 *
 *  Ingress is the partition's root; a node of the partition is an egress for
 *  a flow when that flow's tree leaves the partition there or ends there. Returns nothing
 *  for disjoint trees or when the trigger does not fire.
 */
std::optional<NcBinding>
planCodedSubgraph(const Graph& graph, std::span<const DirectedEdge> treeA, std::span<const DirectedEdge> treeB,
                  FlowId a, FlowId b, std::size_t k, const TriggerContext& context, uint64_t seed);

} // namespace nccn::bloom

#endif // NCCN_BLOOM_PLANNER_HPP
