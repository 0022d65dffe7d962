#ifndef NCCN_CCN_FIB_HPP
#define NCCN_CCN_FIB_HPP

#include "nccn/ccn/packet.hpp"

#include <map>

namespace nccn::ccn {

/** \brief Name-prefix routing table; face order is the tie-break order.
 */
class Fib
{
public:
  /// Appends \p face to the prefix's next hops unless already present.
  void
  addNextHop(const ContentName& prefix, FaceId face);

  void
  erase(const ContentName& prefix);

  /// Next hops of the longest registered prefix of \p name, or nullptr.
  const std::vector<FaceId>*
  longestPrefixMatch(const ContentName& name) const;

  std::size_t
  size() const
  {
    return m_entries.size();
  }

private:
  std::map<std::vector<std::string>, std::vector<FaceId>> m_entries;
};

} // namespace nccn::ccn

#endif
