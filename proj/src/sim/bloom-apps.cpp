#include "nccn/sim/bloom-apps.hpp"

namespace nccn::sim {

BloomNode::BloomNode(Harness& h, NodeIndex self, BloomPlan& plan, std::vector<BloomSourceSpec> sources)
  : App(h, self)
  , m_plan(plan)
  , m_sources(std::move(sources))
{
  for (const auto& f : h.topology().faces(self)) {
    m_faceIds.push_back(bloom::linkId({static_cast<bloom::NodeId>(self), static_cast<bloom::NodeId>(f.peer)},
                                      plan.linkSeed));
  }
  if (m_plan.binding && m_plan.binding->egressAt(static_cast<bloom::NodeId>(self)) != nullptr) {
    m_egress.emplace(*m_plan.binding);
  }
}

void
BloomNode::start()
{
  for (std::size_t s = 0; s < m_sources.size(); ++s) {
    for (std::size_t i = 0; i < m_sources[s].packets; ++i) {
      after(m_sources[s].start + static_cast<double>(i) * m_sources[s].period, [this, s, i] { emitSource(s, i); });
    }
  }
}

void
BloomNode::emitSource(std::size_t source, std::size_t seq)
{
  const auto& spec = m_sources[source];
  std::size_t span = spec.maxPayload - spec.minPayload + 1;
  Bytes payload(spec.minPayload + static_cast<std::size_t>(rng().next() % span));
  for (auto& b : payload) {
    b = rng().byte();
  }
  BloomFrame frame{spec.filter, bloom::FlowPacket{spec.flow, static_cast<uint32_t>(seq), std::move(payload)},
                   spec.intended, seq + 1 == spec.packets};
  firstSight(frame);
  forward(frame, std::nullopt);
}

BloomNode::PacketKey
BloomNode::keyOf(const BloomFrame& frame)
{
  if (const auto* p = std::get_if<bloom::FlowPacket>(&frame.body)) {
    return {p->flow.value, p->seq, ~uint64_t{0}};
  }
  const auto& c = std::get<bloom::CodedFlowPacket>(frame.body);
  // coded packets of one generation differ only in their coefficients
  return {c.derived.value, c.generation, fnv1a64({reinterpret_cast<const char*>(c.coefficients.data()),
                                                  c.coefficients.size()})};
}

bool
BloomNode::firstSight(const BloomFrame& frame)
{
  return m_seen.insert(keyOf(frame)).second;
}

void
BloomNode::forward(const BloomFrame& frame, std::optional<std::size_t> except)
{
  for (std::size_t f = 0; f < m_faceIds.size(); ++f) {
    if (f != except && bloom::forwardMatch(frame.filter, m_faceIds[f])) {
      send(f, frame);
    }
  }
}

void
BloomNode::receive(std::size_t face, const Envelope& envelope)
{
  const auto& frame = std::get<BloomFrame>(envelope.frame);
  if (!firstSight(frame)) {
    return;
  }
  if (std::holds_alternative<bloom::FlowPacket>(frame.body)) {
    handlePlain(frame, face);
    return;
  }
  if (m_egress) {
    egress(std::get<bloom::CodedFlowPacket>(frame.body), face);
  }
  forward(frame, face);
}

void
BloomNode::handlePlain(const BloomFrame& frame, std::optional<std::size_t> arrival)
{
  const auto& pkt = std::get<bloom::FlowPacket>(frame.body);
  auto sub = m_plan.subscriptions.find(m_self);
  if (sub != m_plan.subscriptions.end() && sub->second.count(pkt.flow.value) != 0) {
    m_plan.deliveries[m_self].push_back(
      {pkt.flow.value, pkt.seq,
       fnv1a64({reinterpret_cast<const char*>(pkt.payload.data()), pkt.payload.size()})});
    ++m_harness.live().subscribers[name()]["flow_" + std::to_string(pkt.flow.value)];
  }
  const auto& b = m_plan.binding;
  if (b && b->ingress == m_self && (pkt.flow == b->parentA || pkt.flow == b->parentB)) {
    ingress(pkt, frame.last);
  }
  forward(frame, arrival);
}

void
BloomNode::ingress(const bloom::FlowPacket& pkt, bool last)
{
  const auto& b = *m_plan.binding;
  auto& mine = pkt.flow == b.parentA ? m_a : m_b;
  auto& other = pkt.flow == b.parentA ? m_b : m_a;
  uint64_t windowEnd = (uint64_t{m_nextGen} + 1) * b.k;
  if (pkt.seq >= windowEnd && !other.ended && other.pending.size() < b.k) {
    ++m_harness.live().stalls; // this flow runs ahead of the other one
  }
  mine.pending.emplace(pkt.seq, pkt);
  mine.maxSeq = std::max(mine.maxSeq.value_or(0), pkt.seq);
  mine.ended = mine.ended || last;
  tryEmit();
}

void
BloomNode::tryEmit()
{
  const auto& b = *m_plan.binding;
  for (;;) {
    uint64_t lo = uint64_t{m_nextGen} * b.k;
    uint64_t hi = lo + b.k;
    auto window = [&](FlowQueue& q) {
      std::vector<bloom::FlowPacket> w;
      for (auto it = q.pending.lower_bound(static_cast<uint32_t>(lo)); it != q.pending.end() && it->first < hi;
           ++it) {
        w.push_back(it->second);
      }
      return w;
    };
    auto ready = [&](const FlowQueue& q, std::size_t have) {
      return have == b.k || q.ended || (q.maxSeq && *q.maxSeq >= hi);
    };
    auto wa = window(m_a);
    auto wb = window(m_b);
    if (!ready(m_a, wa.size()) || !ready(m_b, wb.size())) {
      return;
    }
    if (wa.empty() && wb.empty()) {
      if (m_a.ended && m_b.ended && (!m_a.maxSeq || *m_a.maxSeq < lo) && (!m_b.maxSeq || *m_b.maxSeq < lo)) {
        return; // both streams are done
      }
      ++m_nextGen; // a gap on both flows
      continue;
    }
    if (wa.size() < b.k || wb.size() < b.k) {
      ++m_harness.live().padFlushes;
    }
    for (auto& p : bloom::ncIngress(wa, wb, b, m_nextGen, rng())) {
      BloomFrame frame{b.filterAB, std::move(p), 1, false};
      firstSight(frame);
      forward(frame, std::nullopt);
    }
    for (auto* q : {&m_a, &m_b}) {
      q->pending.erase(q->pending.begin(), q->pending.lower_bound(static_cast<uint32_t>(hi)));
    }
    ++m_nextGen;
  }
}

void
BloomNode::egress(const bloom::CodedFlowPacket& pkt, std::size_t arrival)
{
  const auto& b = *m_plan.binding;
  auto before = m_egress->pending();
  auto restored = m_egress->absorb(pkt, now());
  if (!restored && m_egress->pending() > before) {
    // first packet of a new generation: arm its timeout
    after(m_plan.generationTimeout, [this] {
      m_harness.live().generationLosses += m_egress->expire(now(), m_plan.generationTimeout).size();
    });
  }
  if (!restored) {
    return;
  }
  const auto* point = b.egressAt(static_cast<bloom::NodeId>(m_self));
  auto emit = [&](std::vector<bloom::FlowPacket>& pkts, const bloom::ZFilter& filter, std::size_t intended) {
    for (auto& p : pkts) {
      BloomFrame frame{filter, std::move(p), intended, false};
      if (firstSight(frame)) {
        handlePlain(frame, arrival);
      }
    }
  };
  if (point->restoresA) {
    emit(restored->a, restored->filterA, 2);
  }
  if (point->restoresB) {
    emit(restored->b, restored->filterB, 3);
  }
}

} // namespace nccn::sim
