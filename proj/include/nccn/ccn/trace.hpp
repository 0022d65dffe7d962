#ifndef NCCN_CCN_TRACE_HPP
#define NCCN_CCN_TRACE_HPP

#include "nccn/ccn/packet.hpp"

namespace nccn::ccn {

/** \brief One tab-separated trace record per packet arrival.
 *
 *  time (9 decimals) | node | INT or DATA | face | name | nonce (16 hex
 *  digits) or generation id (decimal, coded Data only) | coding vector (hex,
 *  empty unless coded). No trailing tab; lines end with '\n'.
 */
std::string
traceLine(double time, std::string_view node, FaceId face, const Interest& interest);

std::string
traceLine(double time, std::string_view node, FaceId face, const DataPacket& data);

/// Generic form used by other packet kinds.
std::string
traceLine(double time, std::string_view node, std::string_view kind, FaceId face, std::string_view name,
          std::string_view id, std::string_view vector);

} // namespace nccn::ccn

#endif // NCCN_CCN_TRACE_HPP
