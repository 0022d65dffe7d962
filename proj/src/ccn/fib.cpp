#include "nccn/ccn/fib.hpp"

#include <algorithm>

namespace nccn::ccn {

void
Fib::addNextHop(const ContentName& prefix, FaceId face)
{
  auto& hops = m_entries[prefix.components()];
  if (std::find(hops.begin(), hops.end(), face) == hops.end()) {
    hops.push_back(face);
  }
}

void
Fib::erase(const ContentName& prefix)
{
  m_entries.erase(prefix.components());
}

const std::vector<FaceId>*
Fib::longestPrefixMatch(const ContentName& name) const
{
  auto comps = name.components();
  while (!comps.empty()) {
    auto it = m_entries.find(comps);
    if (it != m_entries.end() && !it->second.empty()) {
      return &it->second;
    }
    comps.pop_back();
  }
  return nullptr;
}

} // namespace nccn::ccn
