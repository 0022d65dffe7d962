#ifndef NCCN_SIM_TOPOLOGY_HPP
#define NCCN_SIM_TOPOLOGY_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nccn::sim {

/// Invalid scenario or topology configuration.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

using NodeIndex = std::size_t;

enum class NodeRole {
  Consumer,
  Router,
  Repository,
  NcBorder,
};

const char*
toString(NodeRole role);

struct NodeSpec
{
  std::string name;
  NodeRole role = NodeRole::Router;
};

struct LinkSpec
{
  std::string a;
  std::string b;
  double latency = 0.01;            ///< seconds
  std::optional<double> capacity;   ///< chunks per second; unset means no serialization delay
  double loss = 0;                  ///< per-packet drop probability, both directions
};

/// One end of a link as seen from a node. Faces are numbered in link order.
struct Face
{
  std::size_t link;
  NodeIndex peer;
  std::size_t channel; ///< directed channel from this node to the peer
};

/** \brief Nodes and bidirectional links; each link is two directed channels.
 */
class Topology
{
public:
  /// \throw ConfigError on a duplicate or empty name
  NodeIndex
  addNode(std::string name, NodeRole role);

  /// \throw ConfigError on unknown endpoints, self loops or invalid parameters
  std::size_t
  addLink(LinkSpec spec);

  /// \throw ConfigError when unknown
  NodeIndex
  node(const std::string& name) const;

  std::optional<NodeIndex>
  find(const std::string& name) const;

  const std::vector<NodeSpec>&
  nodes() const
  {
    return m_nodes;
  }

  const std::vector<LinkSpec>&
  links() const
  {
    return m_links;
  }

  LinkSpec&
  link(std::size_t i)
  {
    return m_links.at(i);
  }

  const std::vector<Face>&
  faces(NodeIndex n) const
  {
    return m_faces.at(n);
  }

  /// face of \p from that leads to \p to
  std::optional<std::size_t>
  faceTo(NodeIndex from, NodeIndex to) const;

  /// link between two named nodes
  std::optional<std::size_t>
  findLink(const std::string& a, const std::string& b) const;

  /// "a->b" label of a directed channel
  std::string
  channelLabel(std::size_t channel) const;

  NodeIndex
  channelSource(std::size_t channel) const;

  NodeIndex
  channelTarget(std::size_t channel) const;

  std::size_t
  channelCount() const
  {
    return 2 * m_links.size();
  }

  double
  maxLatency() const;

  /// Re-checks every link; used after parameter overrides.
  /// \throw ConfigError
  void
  validate() const;

private:
  std::vector<NodeSpec> m_nodes;
  std::vector<LinkSpec> m_links;
  std::vector<std::pair<NodeIndex, NodeIndex>> m_ends;
  std::vector<std::vector<Face>> m_faces;
};

} // namespace nccn::sim

#endif // NCCN_SIM_TOPOLOGY_HPP
