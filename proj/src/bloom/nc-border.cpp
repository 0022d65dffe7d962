#include "nccn/bloom/nc-border.hpp"
#include "nccn/byte-io.hpp"

#include <algorithm>

namespace nccn::bloom {

const EgressPoint*
NcBinding::egressAt(NodeId node) const
{
  for (const auto& e : egress) {
    if (e.node == node) {
      return &e;
    }
  }
  return nullptr;
}

Bytes
encodeCoded(const CodedFlowPacket& p)
{
  ByteWriter w;
  w.u64(p.derived.value).u32(p.generation).u16(p.k).raw(p.coefficients);
  w.u64(p.parentA.value).u64(p.parentB.value);
  w.raw(p.filterA.bits.toBytes()).raw(p.filterB.bits.toBytes());
  for (auto len : p.lengths) {
    w.u16(len);
  }
  w.raw(p.payload);
  return w.take();
}

CodedFlowPacket
decodeCoded(std::span<const uint8_t> wire)
{
  ByteReader r(wire);
  CodedFlowPacket p;
  p.derived.value = r.u64();
  p.generation = r.u32();
  p.k = r.u16();
  if (p.k == 0) {
    throw ParseError("coded flow packet with k = 0");
  }
  p.coefficients = r.raw(2 * std::size_t{p.k});
  p.parentA.value = r.u64();
  p.parentB.value = r.u64();
  p.filterA.bits = BitPattern::fromBytes(r.raw(FILTER_BITS / 8));
  p.filterB.bits = BitPattern::fromBytes(r.raw(FILTER_BITS / 8));
  for (std::size_t i = 0; i < 2 * std::size_t{p.k}; ++i) {
    p.lengths.push_back(r.u16());
  }
  p.payload = r.raw(r.remaining());
  return p;
}

namespace {

void
checkBinding(const NcBinding& binding)
{
  if (binding.parentA == binding.parentB) {
    throw std::domain_error("binding requires two flows");
  }
  if (binding.derived != deriveFlowId(binding.parentA, binding.parentB)) {
    throw std::domain_error("derived flow id does not match its parents");
  }
  if (binding.k == 0 || binding.k > 0x7FFF) {
    throw std::domain_error("window size out of range");
  }
}

void
placeWindow(std::span<const FlowPacket> window, FlowId flow, uint32_t generation, std::size_t offset,
            std::size_t k, std::vector<Bytes>& sources, std::vector<uint16_t>& lengths)
{
  if (window.size() > k) {
    throw std::domain_error("window holds more than k packets");
  }
  uint64_t first = uint64_t{generation} * k;
  for (const auto& pkt : window) {
    if (pkt.flow != flow) {
      throw std::domain_error("packet does not belong to the bound flow");
    }
    if (pkt.seq < first || pkt.seq >= first + k) {
      throw std::domain_error("packet lies outside its generation's window");
    }
    if (pkt.payload.empty() || pkt.payload.size() > 0xFFFF) {
      throw std::domain_error("flow packet payload must hold 1..65535 bytes");
    }
    std::size_t pos = offset + (pkt.seq - first);
    if (lengths[pos] != 0) {
      throw std::domain_error("duplicate packet in window");
    }
    sources[pos] = pkt.payload;
    lengths[pos] = static_cast<uint16_t>(pkt.payload.size());
  }
}

} // namespace

std::vector<CodedFlowPacket>
ncIngressWith(std::span<const FlowPacket> windowA, std::span<const FlowPacket> windowB,
              const NcBinding& binding, uint32_t generation, std::span<const rlnc::CodingVector> rows)
{
  checkBinding(binding);
  if (windowA.empty() && windowB.empty()) {
    throw std::domain_error("nothing to code");
  }
  const std::size_t k = binding.k;
  std::vector<Bytes> sources(2 * k);
  std::vector<uint16_t> lengths(2 * k, 0);
  placeWindow(windowA, binding.parentA, generation, 0, k, sources, lengths);
  placeWindow(windowB, binding.parentB, generation, k, k, sources, lengths);
  std::size_t width = *std::max_element(lengths.begin(), lengths.end());
  auto gen = rlnc::Generation::fromChunks({generation}, std::move(sources), width);

  std::vector<CodedFlowPacket> out;
  for (const auto& row : rows) {
    if (row.size() != 2 * k) {
      throw std::domain_error("coefficient row must have 2k entries");
    }
    auto chunk = rlnc::combine(gen, row);
    CodedFlowPacket p;
    p.derived = binding.derived;
    p.generation = generation;
    p.k = static_cast<uint16_t>(k);
    p.coefficients = row;
    p.parentA = binding.parentA;
    p.parentB = binding.parentB;
    p.filterA = binding.filterA;
    p.filterB = binding.filterB;
    p.lengths = lengths;
    p.payload = std::move(chunk.payload);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<CodedFlowPacket>
ncIngress(std::span<const FlowPacket> windowA, std::span<const FlowPacket> windowB,
          const NcBinding& binding, uint32_t generation, RandomSource& rng)
{
  checkBinding(binding);
  const std::size_t n = 2 * binding.k;
  rlnc::Decoder span({generation}, n, 0);
  std::vector<rlnc::CodingVector> rows;
  while (rows.size() < n) {
    auto v = rlnc::drawVector(n, rng);
    if (span.addVector(v) == rlnc::AddResult::Innovative) {
      rows.push_back(std::move(v));
    }
  }
  return ncIngressWith(windowA, windowB, binding, generation, rows);
}

EgressDecoder::EgressDecoder(const NcBinding& binding)
  : m_binding(binding)
{
}

std::optional<RestoredFlows>
EgressDecoder::absorb(const CodedFlowPacket& p, double now)
{
  if (p.derived != m_binding.derived) {
    throw std::domain_error("coded packet of another flow");
  }
  if (m_closed.count(p.generation) != 0) {
    return std::nullopt;
  }
  const std::size_t n = 2 * std::size_t{p.k};
  auto it = m_open.find(p.generation);
  if (it == m_open.end()) {
    it = m_open.emplace(p.generation, Open{rlnc::Decoder({p.generation}, n, p.payload.size()), p.lengths, now})
           .first;
  }
  auto& open = it->second;
  if (open.decoder.add(rlnc::CodedChunk{{p.generation}, p.coefficients, p.payload}) == rlnc::AddResult::Redundant ||
      !open.decoder.isComplete()) {
    return std::nullopt;
  }

  auto sources = open.decoder.decode();
  RestoredFlows out;
  out.generation = p.generation;
  out.filterA = p.filterA;
  out.filterB = p.filterB;
  for (std::size_t i = 0; i < n; ++i) {
    auto len = open.lengths[i];
    if (len == 0) {
      continue; // padding
    }
    bool isA = i < p.k;
    FlowPacket pkt{isA ? p.parentA : p.parentB,
                   static_cast<uint32_t>(p.generation * p.k + (isA ? i : i - p.k)),
                   Bytes(sources[i].begin(), sources[i].begin() + len)};
    (isA ? out.a : out.b).push_back(std::move(pkt));
  }
  m_open.erase(it);
  m_closed.insert(p.generation);
  return out;
}

std::vector<uint32_t>
EgressDecoder::expire(double now, double timeout)
{
  std::vector<uint32_t> dropped;
  for (auto it = m_open.begin(); it != m_open.end();) {
    if (now - it->second.started >= timeout) {
      dropped.push_back(it->first);
      m_closed.insert(it->first);
      it = m_open.erase(it);
    }
    else {
      ++it;
    }
  }
  return dropped;
}

std::optional<RestoredFlows>
ncEgress(std::span<const CodedFlowPacket> packets, const NcBinding& binding)
{
  EgressDecoder egress(binding);
  for (const auto& p : packets) {
    if (auto out = egress.absorb(p, 0.0)) {
      return out;
    }
  }
  return std::nullopt;
}

} // namespace nccn::bloom
