#ifndef NCCN_BLOOM_NC_BORDER_HPP
#define NCCN_BLOOM_NC_BORDER_HPP

#include "nccn/bloom/filter.hpp"
#include "nccn/rlnc.hpp"

#include <map>
#include <optional>
#include <set>

namespace nccn::bloom {

/// Border node of the coded segment and the parent flows that leave the segment there.
struct EgressPoint
{
  NodeId node = 0;
  bool restoresA = false;
  bool restoresB = false;

  friend bool
  operator==(const EgressPoint&, const EgressPoint&) = default;
};

/** \brief Two flows merged into one coded flow over their shared partition.
 */
struct NcBinding
{
  FlowId parentA;
  FlowId parentB;
  FlowId derived;
  std::size_t k = 1; ///< packets per flow per coding generation
  NodeId ingress = 0;
  std::vector<EgressPoint> egress;
  std::vector<DirectedEdge> shared; ///< the coded segment
  std::vector<DirectedEdge> aOnly;  ///< flow A edges outside the segment
  std::vector<DirectedEdge> bOnly;
  ZFilter filterA; ///< built from aOnly
  ZFilter filterB; ///< built from bOnly
  ZFilter filterAB; ///< built from shared

  const EgressPoint*
  egressAt(NodeId node) const;
};

/// Plain packet of one flow, as it enters the ingress or leaves the egress.
struct FlowPacket
{
  FlowId flow;
  uint32_t seq = 0; ///< 0-based position in the flow
  Bytes payload;

  friend bool
  operator==(const FlowPacket&, const FlowPacket&) = default;
};

/** \brief Coded packet of the derived flow, with what the egress needs to
 *         restore both parents.
 *
 *  Sources 0..k-1 are flow A's window, k..2k-1 flow B's. A length of 0 marks
 *  padding for an underfull window; real packets are never empty.
 */
struct CodedFlowPacket
{
  FlowId derived;
  uint32_t generation = 0;
  uint16_t k = 0;
  rlnc::CodingVector coefficients; ///< 2k entries
  FlowId parentA;
  FlowId parentB;
  ZFilter filterA;
  ZFilter filterB;
  std::vector<uint16_t> lengths; ///< 2k entries
  Bytes payload;

  friend bool
  operator==(const CodedFlowPacket&, const CodedFlowPacket&) = default;
};

/// derived u64 | gen u32 | k u16 | 2k coeffs | parentA u64 | parentB u64 |
/// filterA 32 | filterB 32 | 2k lengths u16 | payload
Bytes
encodeCoded(const CodedFlowPacket& p);

/// \throw ParseError
CodedFlowPacket
decodeCoded(std::span<const uint8_t> wire);

/// Coded packets with the given coefficient rows over the 2k window sources.
/// Window g of a flow holds (some of) its packets g*k .. g*k+k-1; a packet sits at
/// position seq - g*k and missing positions are padding.
/// \throw std::domain_error on a degenerate binding, oversized windows,
///        empty payloads or rows of the wrong width
std::vector<CodedFlowPacket>
ncIngressWith(std::span<const FlowPacket> windowA, std::span<const FlowPacket> windowB,
              const NcBinding& binding, uint32_t generation, std::span<const rlnc::CodingVector> rows);

/// 2k random coded packets whose vectors are linearly independent.
std::vector<CodedFlowPacket>
ncIngress(std::span<const FlowPacket> windowA, std::span<const FlowPacket> windowB,
          const NcBinding& binding, uint32_t generation, RandomSource& rng);

struct RestoredFlows
{
  uint32_t generation = 0;
  ZFilter filterA; ///< onward filters taken from the encapsulation
  ZFilter filterB;
  std::vector<FlowPacket> a;
  std::vector<FlowPacket> b;
};

/** \brief Decoding state of an egress node, one decoder per generation.
 */
class EgressDecoder
{
public:
  explicit
  EgressDecoder(const NcBinding& binding);

  /// Absorbs \p p; returns the restored flows when its generation completes.
  /// Packets of finished or dropped generations are ignored.
  std::optional<RestoredFlows>
  absorb(const CodedFlowPacket& p, double now);

  /// Drops generations older than \p timeout that are still rank-deficient.
  std::vector<uint32_t>
  expire(double now, double timeout);

  std::size_t
  pending() const
  {
    return m_open.size();
  }

private:
  struct Open
  {
    rlnc::Decoder decoder;
    std::vector<uint16_t> lengths;
    double started = 0;
  };

  const NcBinding& m_binding;
  std::map<uint32_t, Open> m_open;
  std::set<uint32_t> m_closed;
};

/// Restores both flows from \p packets of one generation; empty when rank < 2k.
std::optional<RestoredFlows>
ncEgress(std::span<const CodedFlowPacket> packets, const NcBinding& binding);

} // namespace nccn::bloom

#endif // NCCN_BLOOM_NC_BORDER_HPP
