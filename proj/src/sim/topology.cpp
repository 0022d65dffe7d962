#include "nccn/sim/topology.hpp"

#include <algorithm>
#include <cmath>

namespace nccn::sim {

const char*
toString(NodeRole role)
{
  switch (role) {
    case NodeRole::Consumer:
      return "consumer";
    case NodeRole::Router:
      return "router";
    case NodeRole::Repository:
      return "repository";
    case NodeRole::NcBorder:
      return "nc-border";
  }
  return "?";
}

NodeIndex
Topology::addNode(std::string name, NodeRole role)
{
  if (name.empty()) {
    throw ConfigError("node name must not be empty");
  }
  if (find(name)) {
    throw ConfigError("duplicate node '" + name + "'");
  }
  m_nodes.push_back({std::move(name), role});
  m_faces.emplace_back();
  return m_nodes.size() - 1;
}

namespace {

void
checkLink(const LinkSpec& l)
{
  if (!(l.latency > 0) || !std::isfinite(l.latency)) {
    throw ConfigError("link " + l.a + "-" + l.b + ": latency must be > 0");
  }
  if (l.capacity && (!(*l.capacity > 0) || !std::isfinite(*l.capacity))) {
    throw ConfigError("link " + l.a + "-" + l.b + ": capacity must be > 0");
  }
  if (!(l.loss >= 0 && l.loss <= 1)) {
    throw ConfigError("link " + l.a + "-" + l.b + ": loss must lie in [0, 1]");
  }
}

} // namespace

std::size_t
Topology::addLink(LinkSpec spec)
{
  auto a = node(spec.a);
  auto b = node(spec.b);
  if (a == b) {
    throw ConfigError("self loop at '" + spec.a + "'");
  }
  checkLink(spec);
  std::size_t index = m_links.size();
  m_links.push_back(std::move(spec));
  m_ends.emplace_back(a, b);
  m_faces[a].push_back({index, b, 2 * index});
  m_faces[b].push_back({index, a, 2 * index + 1});
  return index;
}

std::optional<NodeIndex>
Topology::find(const std::string& name) const
{
  for (NodeIndex i = 0; i < m_nodes.size(); ++i) {
    if (m_nodes[i].name == name) {
      return i;
    }
  }
  return std::nullopt;
}

NodeIndex
Topology::node(const std::string& name) const
{
  if (auto i = find(name)) {
    return *i;
  }
  throw ConfigError("unknown node '" + name + "'");
}

std::optional<std::size_t>
Topology::faceTo(NodeIndex from, NodeIndex to) const
{
  const auto& fs = m_faces.at(from);
  for (std::size_t f = 0; f < fs.size(); ++f) {
    if (fs[f].peer == to) {
      return f;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t>
Topology::findLink(const std::string& a, const std::string& b) const
{
  for (std::size_t i = 0; i < m_links.size(); ++i) {
    const auto& l = m_links[i];
    if ((l.a == a && l.b == b) || (l.a == b && l.b == a)) {
      return i;
    }
  }
  return std::nullopt;
}

NodeIndex
Topology::channelSource(std::size_t channel) const
{
  const auto& e = m_ends.at(channel / 2);
  return channel % 2 == 0 ? e.first : e.second;
}

NodeIndex
Topology::channelTarget(std::size_t channel) const
{
  const auto& e = m_ends.at(channel / 2);
  return channel % 2 == 0 ? e.second : e.first;
}

std::string
Topology::channelLabel(std::size_t channel) const
{
  return m_nodes[channelSource(channel)].name + "->" + m_nodes[channelTarget(channel)].name;
}

double
Topology::maxLatency() const
{
  double m = 0;
  for (const auto& l : m_links) {
    m = std::max(m, l.latency);
  }
  return m;
}

void
Topology::validate() const
{
  for (const auto& l : m_links) {
    checkLink(l);
  }
}

} // namespace nccn::sim
