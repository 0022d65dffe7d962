#ifndef NCCN_CCN_PIT_HPP
#define NCCN_CCN_PIT_HPP

#include "nccn/ccn/packet.hpp"

#include <deque>
#include <map>

namespace nccn::ccn {

struct PitEntry
{
  std::vector<FaceId> inFaces;  ///< each face at most once
  std::vector<uint64_t> nonces;
  std::vector<FaceId> outFaces;
  double created = 0;
  double expiry = 0;

  bool
  hasInFace(FaceId face) const;

  void
  addInFace(FaceId face);

  void
  addOutFace(FaceId face);
};

/** \brief Pending Interest Table.
 *
 *  A plain key holds at most one entry. A coded key may hold several: each
 *  NC Interest asks for one more degree of freedom, so a repeated request
 *  from a face that is already waiting opens a new entry instead of being
 *  folded into the pending one. Each coded Data consumes the oldest entry.
 *
 *  After an entry is consumed, the upstream faces that have not answered yet
 *  are remembered until the entry's expiry, so late copies can be told apart
 *  from unsolicited Data.
 */
class Pit
{
public:
  explicit
  Pit(double lifetime = 4.0);

  /// Entries pending under \p key, oldest first; nullptr if none.
  std::deque<PitEntry>*
  find(const std::string& key);

  PitEntry&
  create(const std::string& key, double now);

  /// Consumes the oldest entry under \p key that was forwarded to \p from
  /// (or the oldest one at all if none was).
  std::optional<PitEntry>
  consume(const std::string& key, FaceId from, double now);

  /// True (once) when \p from is an unanswered upstream of a consumed entry.
  bool
  takeStraggler(const std::string& key, FaceId from, double now);

  /// Drops an entry that was created but could not be forwarded.
  void
  dropNewest(const std::string& key);

  /// Removes expired entries and straggler records; returns entries removed.
  std::size_t
  expire(double now);

  /// number of pending entries
  std::size_t
  size() const;

  double
  lifetime() const
  {
    return m_lifetime;
  }

private:
  struct Straggler
  {
    std::vector<FaceId> faces;
    double expiry = 0;
  };

  double m_lifetime;
  std::map<std::string, std::deque<PitEntry>> m_entries;
  std::map<std::string, std::vector<Straggler>> m_stragglers;
};

} // namespace nccn::ccn

#endif
