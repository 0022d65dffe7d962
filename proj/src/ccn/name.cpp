#include "nccn/ccn/name.hpp"
#include "nccn/common.hpp"

#include <algorithm>
#include <charconv>

namespace nccn::ccn {

ContentName::ContentName(std::vector<std::string> components, ChunkComponent chunk)
  : m_components(std::move(components))
  , m_chunk(chunk)
{
  if (m_components.empty()) {
    throw std::invalid_argument("content name needs at least one component");
  }
  if (std::any_of(m_components.begin(), m_components.end(), [] (const auto& c) { return c.empty(); })) {
    throw std::invalid_argument("empty name component");
  }
}

namespace {

bool
looksLikeChunkLabel(std::string_view c)
{
  return c.size() >= 2 && c[0] == 'C' && (std::isdigit(static_cast<unsigned char>(c[1])) || c[1] == '-');
}

uint32_t
parseChunkLabel(std::string_view c)
{
  auto digits = c.substr(1);
  uint32_t n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || n == 0 || digits[0] == '0') {
    throw ParseError("malformed chunk label '" + std::string(c) + "'");
  }
  return n;
}

} // namespace

ContentName
ContentName::parse(std::string_view uri)
{
  if (!uri.empty() && uri.front() == '/') {
    uri.remove_prefix(1);
  }
  if (!uri.empty() && uri.back() == '/') {
    uri.remove_suffix(1);
  }
  if (uri.empty()) {
    throw ParseError("empty content name");
  }
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto slash = uri.find('/', start);
    auto part = uri.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
    if (part.empty()) {
      throw ParseError("empty component in '" + std::string(uri) + "'");
    }
    parts.emplace_back(part);
    if (slash == std::string_view::npos) {
      break;
    }
    start = slash + 1;
  }

  ChunkComponent chunk;
  const auto& last = parts.back();
  if (last == NC_MARKER) {
    chunk = NcMarker{};
    parts.pop_back();
  }
  else if (looksLikeChunkLabel(last)) {
    chunk = ChunkLabel{parseChunkLabel(last)};
    parts.pop_back();
  }
  if (parts.empty()) {
    throw ParseError("name has a chunk component but no object components");
  }
  return ContentName(std::move(parts), chunk);
}

ContentName
ContentName::prefix() const
{
  return ContentName(m_components);
}

ContentName
ContentName::withChunk(uint32_t index) const
{
  return ContentName(m_components, ChunkLabel{index});
}

ContentName
ContentName::withNcMarker() const
{
  return ContentName(m_components, NcMarker{});
}

bool
ContentName::isPrefixOf(const ContentName& other) const
{
  if (m_components.size() > other.m_components.size()) {
    return false;
  }
  return std::equal(m_components.begin(), m_components.end(), other.m_components.begin());
}

std::string
ContentName::toUri() const
{
  std::string out;
  for (const auto& c : m_components) {
    out += c;
    out += '/';
  }
  if (auto* label = std::get_if<ChunkLabel>(&m_chunk)) {
    out += 'C';
    out += std::to_string(label->index);
  }
  else if (isNc()) {
    out += NC_MARKER;
  }
  return out;
}

ChunkRequest
resolveImplicit(const ContentName& name)
{
  if (name.isNc()) {
    return {RequestKind::Coded, 0};
  }
  if (auto* label = std::get_if<ChunkLabel>(&name.chunk())) {
    return {RequestKind::Plain, label->index};
  }
  return {RequestKind::Plain, 1};
}

} // namespace nccn::ccn
