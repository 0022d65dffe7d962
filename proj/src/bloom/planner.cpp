#include "nccn/bloom/planner.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace nccn::bloom {

std::vector<std::vector<NodeId>>
Graph::adjacency() const
{
  std::vector<std::vector<NodeId>> adj(nodeCount);
  for (auto [a, b] : links) {
    if (a >= nodeCount || b >= nodeCount) {
      throw std::domain_error("link endpoint out of range");
    }
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& v : adj) {
    std::sort(v.begin(), v.end());
  }
  return adj;
}

std::vector<DirectedEdge>
deliveryTree(const Graph& graph, NodeId root, std::span<const NodeId> subscribers)
{
  auto adj = graph.adjacency();
  constexpr NodeId NONE = ~NodeId{0};
  std::vector<NodeId> parent(graph.nodeCount, NONE);
  std::vector<bool> seen(graph.nodeCount, false);
  std::deque<NodeId> queue{root};
  seen.at(root) = true;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    for (auto v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }

  std::set<DirectedEdge> edges;
  for (auto s : subscribers) {
    if (!seen.at(s)) {
      throw std::domain_error("subscriber unreachable from the root");
    }
    for (auto v = s; v != root; v = parent[v]) {
      edges.insert({parent[v], v});
    }
  }
  return {edges.begin(), edges.end()};
}

std::vector<DirectedEdge>
sharedPartition(std::span<const DirectedEdge> treeA, std::span<const DirectedEdge> treeB)
{
  std::set<DirectedEdge> inA(treeA.begin(), treeA.end());
  std::vector<DirectedEdge> common;
  for (const auto& e : treeB) {
    if (inA.count(e) != 0) {
      common.push_back(e);
    }
  }
  if (common.empty()) {
    return {};
  }

  // union-find over the endpoints of the common edges
  std::map<NodeId, NodeId> up;
  auto find = [&](NodeId x) {
    while (up[x] != x) {
      x = up[x] = up[up[x]];
    }
    return x;
  };
  for (const auto& e : common) {
    up.try_emplace(e.from, e.from);
    up.try_emplace(e.to, e.to);
  }
  for (const auto& e : common) {
    up[find(e.from)] = find(e.to);
  }
  std::map<NodeId, std::size_t> sizes;
  for (const auto& e : common) {
    ++sizes[find(e.from)];
  }
  // largest component; ties go to the lowest representative
  auto best = std::max_element(sizes.begin(), sizes.end(),
                               [](const auto& x, const auto& y) { return x.second < y.second; })->first;
  std::vector<DirectedEdge> out;
  for (const auto& e : common) {
    if (find(e.from) == best) {
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool
triggerFires(std::span<const DirectedEdge> treeA, std::span<const DirectedEdge> treeB,
             std::span<const DirectedEdge> shared, const TriggerContext& ctx)
{
  switch (ctx.trigger) {
    case Trigger::FalsePositiveRate:
      return falsePositiveEstimate(treeA.size()) > ctx.fpThreshold ||
             falsePositiveEstimate(treeB.size()) > ctx.fpThreshold;
    case Trigger::Congestion:
      return std::any_of(shared.begin(), shared.end(), [&](const DirectedEdge& e) {
        auto it = ctx.utilization.find(e);
        return it != ctx.utilization.end() && it->second > ctx.congestionThreshold;
      });
    case Trigger::Resilience:
      return true;
  }
  return false;
}

std::vector<DirectedEdge>
minus(std::span<const DirectedEdge> tree, const std::set<DirectedEdge>& remove)
{
  std::vector<DirectedEdge> out;
  for (const auto& e : tree) {
    if (remove.count(e) == 0) {
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

std::optional<NcBinding>
planCodedSubgraph(const Graph& graph, std::span<const DirectedEdge> treeA, std::span<const DirectedEdge> treeB,
                  FlowId a, FlowId b, std::size_t k, const TriggerContext& context, uint64_t seed)
{
  (void)graph.adjacency(); // validates endpoints
  auto shared = sharedPartition(treeA, treeB);
  if (shared.empty() || !triggerFires(treeA, treeB, shared, context)) {
    return std::nullopt;
  }

  NcBinding binding;
  binding.parentA = a;
  binding.parentB = b;
  binding.derived = deriveFlowId(a, b);
  binding.k = k;
  binding.shared = shared;

  std::set<DirectedEdge> sharedSet(shared.begin(), shared.end());
  binding.aOnly = minus(treeA, sharedSet);
  binding.bOnly = minus(treeB, sharedSet);

  std::set<NodeId> nodes, heads;
  for (const auto& e : shared) {
    nodes.insert(e.from);
    nodes.insert(e.to);
    heads.insert(e.to);
  }
  for (auto n : nodes) {
    if (heads.count(n) == 0) {
      binding.ingress = n;
      break;
    }
  }
  // a flow leaves the partition at n if its tree continues elsewhere from n or ends at n
  auto exits = [&](std::span<const DirectedEdge> tree, const std::vector<DirectedEdge>& only, NodeId n) {
    auto from = [n](const DirectedEdge& e) { return e.from == n; };
    return std::any_of(only.begin(), only.end(), from) || std::none_of(tree.begin(), tree.end(), from);
  };
  for (auto n : nodes) {
    if (n == binding.ingress) {
      continue;
    }
    EgressPoint p{n, exits(treeA, binding.aOnly, n), exits(treeB, binding.bOnly, n)};
    if (p.restoresA || p.restoresB) {
      binding.egress.push_back(p);
    }
  }

  binding.filterA = buildZFilter(binding.aOnly, seed);
  binding.filterB = buildZFilter(binding.bOnly, seed);
  binding.filterAB = buildZFilter(binding.shared, seed);
  return binding;
}

} // namespace nccn::bloom
