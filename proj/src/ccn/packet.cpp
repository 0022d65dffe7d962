#include "nccn/ccn/packet.hpp"

namespace nccn::ccn {

Interest
makeInterest(const ContentName& name, uint64_t nonce, bool orderRequired)
{
  Interest i;
  i.name = name;
  i.nonce = nonce;
  i.selector.orderRequired = orderRequired;
  return i;
}

std::optional<std::string>
checkInterest(const Interest& interest)
{
  const auto& sel = interest.selector;
  if (sel.digest && !sel.ncFlag) {
    return "digest without NC flag";
  }
  if (sel.ncFlag && sel.orderRequired) {
    return "NC flag on an ordered exchange";
  }
  if (sel.ncFlag != interest.name.isNc()) {
    return "NC flag and NCChunk name disagree";
  }
  if (sel.ncFlag && !sel.digest) {
    return "NC interest without digest";
  }
  if (sel.digest && sel.digest->rows.size() > sel.digest->k) {
    return "digest rank exceeds k";
  }
  return std::nullopt;
}

std::optional<std::string>
checkData(const DataPacket& data)
{
  if (data.isCoded() != data.name.isNc()) {
    return "coding metadata and NCChunk name disagree";
  }
  if (auto* info = data.plain()) {
    auto* label = std::get_if<ChunkLabel>(&data.name.chunk());
    if (label == nullptr || label->index != info->chunkIndex) {
      return "plain data name does not carry its chunk index";
    }
  }
  return std::nullopt;
}

std::string
pitKey(const Interest& interest)
{
  auto req = resolveImplicit(interest.name);
  if (req.kind == RequestKind::Coded) {
    uint64_t gen = interest.selector.digest ? interest.selector.digest->generation.value : 0;
    return interest.name.toUri() + "#" + std::to_string(gen);
  }
  return interest.name.prefix().withChunk(req.index).toUri();
}

std::string
pitKey(const DataPacket& data)
{
  if (auto* info = data.coding()) {
    return data.name.prefix().withNcMarker().toUri() + "#" + std::to_string(info->generation.value);
  }
  return data.name.prefix().withChunk(data.plain()->chunkIndex).toUri();
}

std::size_t
wireSize(const Interest& interest)
{
  std::size_t n = interest.name.toUri().size() + 8 /* nonce */ + 1 /* flags */;
  if (interest.selector.digest) {
    n += 12 + interest.selector.digest->rows.size() * interest.selector.digest->k;
  }
  return n;
}

std::size_t
wireSize(const DataPacket& data)
{
  std::size_t n = data.name.toUri().size() + data.signature.size() + data.payload.size();
  if (auto* info = data.coding()) {
    n += 10 + info->vector.size();
  }
  else {
    n += 8;
  }
  return n;
}

} // namespace nccn::ccn
