#include "nccn/ccn/pit.hpp"

#include <algorithm>

namespace nccn::ccn {

bool
PitEntry::hasInFace(FaceId face) const
{
  return std::find(inFaces.begin(), inFaces.end(), face) != inFaces.end();
}

void
PitEntry::addInFace(FaceId face)
{
  if (!hasInFace(face)) {
    inFaces.push_back(face);
  }
}

void
PitEntry::addOutFace(FaceId face)
{
  if (std::find(outFaces.begin(), outFaces.end(), face) == outFaces.end()) {
    outFaces.push_back(face);
  }
}

Pit::Pit(double lifetime)
  : m_lifetime(lifetime)
{
}

std::deque<PitEntry>*
Pit::find(const std::string& key)
{
  auto it = m_entries.find(key);
  return it == m_entries.end() ? nullptr : &it->second;
}

PitEntry&
Pit::create(const std::string& key, double now)
{
  auto& q = m_entries[key];
  q.push_back(PitEntry{{}, {}, {}, now, now + m_lifetime});
  return q.back();
}

std::optional<PitEntry>
Pit::consume(const std::string& key, FaceId from, double now)
{
  auto it = m_entries.find(key);
  if (it == m_entries.end()) {
    return std::nullopt;
  }
  auto& q = it->second;
  auto pick = std::find_if(q.begin(), q.end(), [from] (const PitEntry& e) {
    return std::find(e.outFaces.begin(), e.outFaces.end(), from) != e.outFaces.end();
  });
  if (pick == q.end()) {
    pick = q.begin();
  }
  PitEntry entry = std::move(*pick);
  q.erase(pick);
  if (q.empty()) {
    m_entries.erase(it);
  }

  Straggler s;
  for (auto f : entry.outFaces) {
    if (f != from) {
      s.faces.push_back(f);
    }
  }
  if (!s.faces.empty()) {
    s.expiry = std::max(entry.expiry, now);
    m_stragglers[key].push_back(std::move(s));
  }
  return entry;
}

bool
Pit::takeStraggler(const std::string& key, FaceId from, double now)
{
  auto it = m_stragglers.find(key);
  if (it == m_stragglers.end()) {
    return false;
  }
  for (auto& s : it->second) {
    if (s.expiry < now) {
      continue;
    }
    auto f = std::find(s.faces.begin(), s.faces.end(), from);
    if (f != s.faces.end()) {
      s.faces.erase(f);
      return true;
    }
  }
  return false;
}

void
Pit::dropNewest(const std::string& key)
{
  auto it = m_entries.find(key);
  if (it == m_entries.end()) {
    return;
  }
  it->second.pop_back();
  if (it->second.empty()) {
    m_entries.erase(it);
  }
}

std::size_t
Pit::expire(double now)
{
  std::size_t removed = 0;
  for (auto it = m_entries.begin(); it != m_entries.end();) {
    auto& q = it->second;
    auto before = q.size();
    q.erase(std::remove_if(q.begin(), q.end(), [now] (const PitEntry& e) { return e.expiry <= now; }), q.end());
    removed += before - q.size();
    it = q.empty() ? m_entries.erase(it) : std::next(it);
  }
  for (auto it = m_stragglers.begin(); it != m_stragglers.end();) {
    auto& v = it->second;
    v.erase(std::remove_if(v.begin(), v.end(),
                           [now] (const Straggler& s) { return s.expiry <= now || s.faces.empty(); }),
            v.end());
    it = v.empty() ? m_stragglers.erase(it) : std::next(it);
  }
  return removed;
}

std::size_t
Pit::size() const
{
  std::size_t n = 0;
  for (const auto& [key, q] : m_entries) {
    n += q.size();
  }
  return n;
}

} // namespace nccn::ccn
