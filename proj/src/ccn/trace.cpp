#include "nccn/ccn/trace.hpp"

#include <cstdio>

namespace nccn::ccn {

std::string
traceLine(double time, std::string_view node, std::string_view kind, FaceId face, std::string_view name,
          std::string_view id, std::string_view vector)
{
  char t[64];
  std::snprintf(t, sizeof(t), "%.9f", time);
  std::string line = t;
  for (auto field : {node, kind}) {
    line += '\t';
    line += field;
  }
  line += '\t';
  line += std::to_string(face);
  for (auto field : {name, id, vector}) {
    line += '\t';
    line += field;
  }
  line += '\n';
  return line;
}

std::string
traceLine(double time, std::string_view node, FaceId face, const Interest& interest)
{
  char nonce[17];
  std::snprintf(nonce, sizeof(nonce), "%016llx", static_cast<unsigned long long>(interest.nonce));
  return traceLine(time, node, "INT", face, interest.name.toUri(), nonce, "");
}

std::string
traceLine(double time, std::string_view node, FaceId face, const DataPacket& data)
{
  if (const auto* info = data.coding()) {
    return traceLine(time, node, "DATA", face, data.name.toUri(), std::to_string(info->generation.value),
                     toHex(info->vector));
  }
  return traceLine(time, node, "DATA", face, data.name.toUri(), "", "");
}

} // namespace nccn::ccn
