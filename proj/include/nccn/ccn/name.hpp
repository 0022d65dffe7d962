#ifndef NCCN_CCN_NAME_HPP
#define NCCN_CCN_NAME_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nccn::ccn {

/// Explicit chunk label "C<n>", n >= 1.
struct ChunkLabel
{
  uint32_t index = 1;

  friend auto
  operator<=>(const ChunkLabel&, const ChunkLabel&) = default;
};

/// "NCChunk": any innovative coded chunk of the object.
struct NcMarker
{
  friend auto
  operator<=>(const NcMarker&, const NcMarker&) = default;
};

using ChunkComponent = std::variant<std::monostate, ChunkLabel, NcMarker>;

inline constexpr std::string_view NC_MARKER = "NCChunk";

/** \brief Hierarchical content name with an optional trailing chunk component.
 *
 *  "www.foo.com/Dir/File/" is a bare object name, "www.foo.com/Dir/File/C2"
 *  names chunk 2, and "www.foo.com/Dir/File/NCChunk" asks for coded content.
 */
class ContentName
{
public:
  ContentName() = default;

  /// \throw std::invalid_argument on an empty component list or empty component
  explicit
  ContentName(std::vector<std::string> components, ChunkComponent chunk = {});

  /// \throw ParseError on empty components or a malformed chunk label
  static ContentName
  parse(std::string_view uri);

  const std::vector<std::string>&
  components() const
  {
    return m_components;
  }

  const ChunkComponent&
  chunk() const
  {
    return m_chunk;
  }

  bool
  isBare() const
  {
    return std::holds_alternative<std::monostate>(m_chunk);
  }

  bool
  isNc() const
  {
    return std::holds_alternative<NcMarker>(m_chunk);
  }

  /// the object name without chunk component
  ContentName
  prefix() const;

  ContentName
  withChunk(uint32_t index) const;

  ContentName
  withNcMarker() const;

  /// leading-subsequence test on the components; chunk components are ignored
  bool
  isPrefixOf(const ContentName& other) const;

  /// bare names render with a trailing '/'
  std::string
  toUri() const;

  friend bool
  operator==(const ContentName&, const ContentName&) = default;

  friend auto
  operator<=>(const ContentName&, const ContentName&) = default;

private:
  std::vector<std::string> m_components;
  ChunkComponent m_chunk;
};

enum class RequestKind {
  Plain,
  Coded,
};

struct ChunkRequest
{
  RequestKind kind = RequestKind::Plain;
  uint32_t index = 1; ///< 1-based; meaningful for Plain only

  friend bool
  operator==(const ChunkRequest&, const ChunkRequest&) = default;
};

/// Bare name -> C1, "C<n>" -> chunk n, "NCChunk" -> coded request.
ChunkRequest
resolveImplicit(const ContentName& name);

} // namespace nccn::ccn

#endif // NCCN_CCN_NAME_HPP
