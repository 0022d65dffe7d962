#ifndef NCCN_SIM_FRAME_HPP
#define NCCN_SIM_FRAME_HPP

#include "nccn/bloom/nc-border.hpp"
#include "nccn/ccn/packet.hpp"
#include "nccn/sim/topology.hpp"

namespace nccn::sim {

/// Packet of the Bloom-filter forwarding plane.
struct BloomFrame
{
  bloom::ZFilter filter;
  std::variant<bloom::FlowPacket, bloom::CodedFlowPacket> body;
  std::size_t intended = 0; ///< simulator bookkeeping: which edge set the filter encodes
  bool last = false;        ///< last packet of its flow (drives pad-and-flush)
};

using Frame = std::variant<ccn::Interest, ccn::DataPacket, BloomFrame>;

/// A frame in flight plus the consumer it is ultimately meant for, if known.
struct Envelope
{
  Frame frame;
  std::optional<NodeIndex> dest;
};

/// Serialization size in chunks: Interests are treated as negligible.
double
chunksOf(const Frame& frame);

std::size_t
bytesOf(const Frame& frame);

} // namespace nccn::sim

#endif // NCCN_SIM_FRAME_HPP
