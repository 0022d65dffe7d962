#include "nccn/bloom/planner.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

using namespace nccn;
using namespace nccn::bloom;

namespace {

/// membership by explicit bit walk, independent of the word-mask shortcut
bool
containsAll(const ZFilter& z, const LinkId& l)
{
  for (std::size_t i = 0; i < FILTER_BITS; ++i) {
    if (l.bits.test(i) && !z.bits.test(i)) {
      return false;
    }
  }
  return true;
}

std::vector<DirectedEdge>
chain(NodeId first, std::size_t edges)
{
  std::vector<DirectedEdge> out;
  for (std::size_t i = 0; i < edges; ++i) {
    out.push_back({static_cast<NodeId>(first + i), static_cast<NodeId>(first + i + 1)});
  }
  return out;
}

NcBinding
bindingFor(std::size_t k)
{
  NcBinding b;
  b.parentA = {0xA};
  b.parentB = {0xB};
  b.derived = deriveFlowId(b.parentA, b.parentB);
  b.k = k;
  b.filterA.bits.set(1);
  b.filterB.bits.set(200);
  return b;
}

std::vector<FlowPacket>
window(FlowId flow, uint32_t gen, std::size_t k, std::size_t count, uint8_t salt)
{
  std::vector<FlowPacket> out;
  for (std::size_t i = 0; i < count; ++i) {
    Bytes payload(3 + (i + salt) % 4);
    for (std::size_t j = 0; j < payload.size(); ++j) {
      payload[j] = static_cast<uint8_t>(salt * 31 + i * 7 + j);
    }
    out.push_back({flow, static_cast<uint32_t>(gen * k + i), payload});
  }
  return out;
}

} // namespace

TEST_SUITE("bloom.filter")
{

TEST_CASE("link ids are deterministic with exactly h bits")
{
  for (NodeId a = 0; a < 200; ++a) {
    DirectedEdge e{a, a * 3 + 1};
    auto l = linkId(e, 42);
    CHECK(l.bits.popcount() == LINK_ID_BITS);
    CHECK(linkId(e, 42) == l);
  }
  CHECK(linkId({1, 2}, 1) != linkId({2, 1}, 1));
  CHECK(linkId({1, 2}, 1) != linkId({1, 2}, 2));
}

TEST_CASE("set bits are uniform over the filter width")
{
  std::vector<double> counts(FILTER_BITS, 0);
  const int edges = 10000;
  for (int i = 0; i < edges; ++i) {
    auto l = linkId({static_cast<NodeId>(i), static_cast<NodeId>(i + 1)}, 7);
    for (std::size_t b = 0; b < FILTER_BITS; ++b) {
      counts[b] += l.bits.test(b);
    }
  }
  double expected = edges * double(LINK_ID_BITS) / FILTER_BITS;
  double chi2 = 0;
  for (auto c : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 255 degrees of freedom; 99.9th percentile is about 330
  CHECK(chi2 < 330);
}

TEST_CASE("zfilter construction")
{
  ZFilter empty = buildZFilter({}, 1);
  CHECK(empty.bits.none());
  CHECK_FALSE(forwardMatch(empty, linkId({0, 1}, 1)));

  std::vector<DirectedEdge> one{{3, 4}};
  CHECK(buildZFilter(one, 9).bits == linkId({3, 4}, 9).bits);

  auto tree = chain(0, 10);
  auto z = buildZFilter(tree, 5);
  for (const auto& e : tree) {
    CHECK(forwardMatch(z, linkId(e, 5)));
    CHECK(containsAll(z, linkId(e, 5)));
  }
}

TEST_CASE("forward match agrees with a bitwise walk")
{
  SeededRandom rng(3);
  for (int i = 0; i < 2000; ++i) {
    auto tree = chain(static_cast<NodeId>(rng.next() % 1000), 1 + rng.next() % 40);
    auto z = buildZFilter(tree, 11);
    auto probe = linkId({static_cast<NodeId>(rng.next()), static_cast<NodeId>(rng.next())}, 11);
    REQUIRE(forwardMatch(z, probe) == containsAll(z, probe));
  }
}

TEST_CASE("false positive rate follows the closed form and grows with n")
{
  // the closed form averages over filters, so every probe gets a fresh random filter
  SeededRandom rng(2718);
  const int probes = 100000;
  double previous = -1;
  for (std::size_t n : {5, 10, 20, 40}) {
    int hits = 0;
    for (int i = 0; i < probes; ++i) {
      std::vector<DirectedEdge> tree;
      for (std::size_t j = 0; j < n; ++j) {
        tree.push_back({static_cast<NodeId>(rng.next()), static_cast<NodeId>(rng.next())});
      }
      DirectedEdge probe{static_cast<NodeId>(rng.next()), static_cast<NodeId>(rng.next())};
      if (std::find(tree.begin(), tree.end(), probe) != tree.end()) {
        --i;
        continue;
      }
      hits += forwardMatch(buildZFilter(tree, 99), linkId(probe, 99));
    }
    double rate = double(hits) / probes;
    double p = std::pow(1 - std::pow(1 - 1.0 / 256, 5.0 * n), 5);
    double se = std::sqrt(p * (1 - p) / probes);
    CHECK(falsePositiveEstimate(n) == doctest::Approx(p));
    CHECK(std::abs(rate - p) <= 3 * se);
    CHECK(rate >= previous);
    previous = rate;
  }
}

TEST_CASE("derived flow ids")
{
  FlowId a{1}, b{2};
  CHECK(deriveFlowId(a, b) == deriveFlowId(b, a));
  CHECK(deriveFlowId(a, b) == deriveFlowId(a, b));
  CHECK_THROWS_AS(deriveFlowId(a, a), std::domain_error);

  SeededRandom rng(5);
  std::unordered_set<uint64_t> seen;
  std::size_t collisions = 0;
  const int pairs = 1000000;
  seen.reserve(pairs);
  for (int i = 0; i < pairs; ++i) {
    FlowId x{rng.next()}, y{rng.next()};
    if (x == y) {
      continue;
    }
    collisions += !seen.insert(deriveFlowId(x, y).value).second;
  }
  CHECK(collisions == 0);
}

} // TEST_SUITE

TEST_SUITE("bloom.nc-border")
{

TEST_CASE("k=1 with unit coefficients yields the sum of both packets")
{
  auto b = bindingFor(1);
  std::vector<FlowPacket> wa{{b.parentA, 0, {0x0F, 0xF0, 0x55}}};
  std::vector<FlowPacket> wb{{b.parentB, 0, {0xFF, 0x00, 0x55}}};
  std::vector<rlnc::CodingVector> rows{{1, 1}};
  auto out = ncIngressWith(wa, wb, b, 0, rows);
  REQUIRE(out.size() == 1);
  CHECK(out[0].coefficients == rlnc::CodingVector{1, 1});
  CHECK(out[0].payload == Bytes{0xF0, 0xF0, 0x00});
  CHECK(out[0].derived == b.derived);
  CHECK(out[0].lengths == std::vector<uint16_t>{3, 3});
}

TEST_CASE("degenerate bindings are rejected")
{
  auto b = bindingFor(1);
  b.parentB = b.parentA;
  std::vector<FlowPacket> wa{{b.parentA, 0, {1}}};
  SeededRandom rng(1);
  CHECK_THROWS_AS(ncIngress(wa, {}, b, 0, rng), std::domain_error);

  auto good = bindingFor(1);
  std::vector<FlowPacket> tooMany{{good.parentA, 0, {1}}, {good.parentA, 1, {2}}};
  CHECK_THROWS_AS(ncIngress(tooMany, {}, good, 0, rng), std::domain_error);
  std::vector<FlowPacket> outside{{good.parentA, 3, {1}}};
  CHECK_THROWS_AS(ncIngress(outside, {}, good, 0, rng), std::domain_error);
}

TEST_CASE("four sources decode back through an independent solver")
{
  auto b = bindingFor(2);
  auto wa = window(b.parentA, 5, 2, 2, 1);
  auto wb = window(b.parentB, 5, 2, 2, 2);
  SeededRandom rng(17);
  auto coded = ncIngress(wa, wb, b, 5, rng);
  REQUIRE(coded.size() == 4);

  std::vector<oracle::Row> a, y;
  for (const auto& p : coded) {
    a.push_back(p.coefficients);
    y.push_back(p.payload);
  }
  REQUIRE(oracle::rank(a) == 4);
  auto solved = oracle::solve(a, y);
  REQUIRE(solved);
  std::vector<FlowPacket> all = wa;
  all.insert(all.end(), wb.begin(), wb.end());
  for (std::size_t i = 0; i < 4; ++i) {
    Bytes trimmed((*solved)[i].begin(), (*solved)[i].begin() + all[i].payload.size());
    CHECK(trimmed == all[i].payload);
  }

  auto restored = ncEgress(coded, b);
  REQUIRE(restored);
  CHECK(restored->a == wa);
  CHECK(restored->b == wb);
  CHECK(restored->filterA == b.filterA);
  CHECK(restored->filterB == b.filterB);
}

TEST_CASE("extra and missing degrees of freedom")
{
  auto b = bindingFor(2);
  auto wa = window(b.parentA, 0, 2, 2, 3);
  auto wb = window(b.parentB, 0, 2, 2, 4);
  SeededRandom rng(8);
  auto coded = ncIngress(wa, wb, b, 0, rng);

  EgressDecoder egress(b);
  CHECK_FALSE(egress.absorb(coded[0], 0.0));
  auto dup = coded[0];
  CHECK_FALSE(egress.absorb(dup, 0.1)); // redundant, ignored
  CHECK_FALSE(egress.absorb(coded[1], 0.2));
  CHECK_FALSE(egress.absorb(coded[2], 0.3));
  auto done = egress.absorb(coded[3], 0.4);
  REQUIRE(done);
  CHECK(done->a == wa);
  CHECK_FALSE(egress.absorb(coded[3], 0.5)); // generation already closed

  EgressDecoder lossy(b);
  for (int i = 0; i < 3; ++i) {
    lossy.absorb(coded[i], 0.0);
  }
  CHECK(lossy.expire(0.5, 1.0).empty());
  CHECK(lossy.expire(1.0, 1.0) == std::vector<uint32_t>{0});
  CHECK_FALSE(lossy.absorb(coded[3], 1.1));
  CHECK_FALSE(ncEgress(std::span(coded).first(3), b));
}

TEST_CASE("underfull window is padded and the padding is stripped")
{
  auto b = bindingFor(3);
  auto wa = window(b.parentA, 2, 3, 2, 5);
  auto wb = window(b.parentB, 2, 3, 1, 6);
  SeededRandom rng(4);
  auto coded = ncIngress(wa, wb, b, 2, rng);
  CHECK(coded.size() == 6);
  CHECK(coded[0].lengths[2] == 0);
  auto restored = ncEgress(coded, b);
  REQUIRE(restored);
  CHECK(restored->a == wa);
  CHECK(restored->b == wb);
}

TEST_CASE("a gap in a window is restored as missing")
{
  auto b = bindingFor(3);
  auto full = window(b.parentA, 1, 3, 3, 7);
  std::vector<FlowPacket> wa{full[0], full[2]};
  auto wb = window(b.parentB, 1, 3, 3, 8);
  SeededRandom rng(6);
  auto restored = ncEgress(ncIngress(wa, wb, b, 1, rng), b);
  REQUIRE(restored);
  CHECK(restored->a == wa);
  CHECK(restored->b == wb);
}

TEST_CASE("encapsulation wire golden vector")
{
  CodedFlowPacket p;
  p.derived = {0x1122334455667788ULL};
  p.generation = 3;
  p.k = 1;
  p.coefficients = {0x01, 0x02};
  p.parentA = {0xA};
  p.parentB = {0xB};
  p.filterA.bits.set(0);
  p.filterB.bits.set(255);
  p.lengths = {2, 1};
  p.payload = {0xAB, 0xCD};
  std::string expected = "1122334455667788"
                         "00000003"
                         "0001"
                         "0102"
                         "000000000000000a"
                         "000000000000000b"
                         "0000000000000001" +
                         std::string(48, '0') + std::string(48, '0') +
                         "8000000000000000"
                         "0002"
                         "0001"
                         "abcd";
  auto wire = encodeCoded(p);
  CHECK(wire.size() == 8 + 4 + 2 + 2 + 16 + 64 + 4 + 2);
  CHECK(toHex(wire) == expected);
  CHECK(decodeCoded(wire) == p);
  wire.resize(20);
  CHECK_THROWS_AS(decodeCoded(wire), ParseError);
}

} // TEST_SUITE

TEST_SUITE("bloom.planner")
{

TEST_CASE("identical trees share everything")
{
  Graph g{5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}}};
  std::vector<NodeId> subs{2, 4};
  auto tree = deliveryTree(g, 0, subs);
  CHECK(tree.size() == 4);
  TriggerContext ctx{Trigger::Resilience};
  auto plan = planCodedSubgraph(g, tree, tree, {1}, {2}, 2, ctx, 3);
  REQUIRE(plan);
  CHECK(plan->shared == tree);
  CHECK(plan->ingress == 0);
  CHECK(plan->aOnly.empty());
  std::vector<NodeId> egress;
  for (const auto& e : plan->egress) {
    CHECK(e.restoresA);
    CHECK(e.restoresB);
    egress.push_back(e.node);
  }
  CHECK(egress == std::vector<NodeId>{2, 4});
}

TEST_CASE("disjoint trees give no binding")
{
  Graph g{6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}}};
  std::vector<NodeId> sa{2}, sb{5};
  auto ta = deliveryTree(g, 0, sa);
  auto tb = deliveryTree(g, 3, sb);
  CHECK_FALSE(planCodedSubgraph(g, ta, tb, {1}, {2}, 1, {Trigger::Resilience}, 1));
}

TEST_CASE("two sources with partially overlapping trees")
{
  //  sA=0 -> 2 ; sB=1 -> 2 ; 2 -> 3 -> 4 ; 4 -> 5 (A) ; 4 -> 6 (B) ; 3 -> 7 (B)
  Graph g{8, {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {3, 7}}};
  std::vector<NodeId> sa{5, 6}, sb{6, 7};
  auto ta = deliveryTree(g, 0, sa);
  auto tb = deliveryTree(g, 1, sb);

  std::set<DirectedEdge> brute;
  for (const auto& x : ta) {
    for (const auto& y : tb) {
      if (x == y) {
        brute.insert(x);
      }
    }
  }
  auto plan = planCodedSubgraph(g, ta, tb, {1}, {2}, 2, {Trigger::Resilience}, 3);
  REQUIRE(plan);
  CHECK(std::set<DirectedEdge>(plan->shared.begin(), plan->shared.end()) == brute);
  CHECK(plan->ingress == 2);
  CHECK(plan->egress == std::vector<EgressPoint>{{3, false, true}, {4, true, false}, {6, true, true}});
  CHECK(plan->filterAB == buildZFilter(plan->shared, 3));
  CHECK(plan->aOnly == std::vector<DirectedEdge>{{0, 2}, {4, 5}});
}

TEST_CASE("triggers")
{
  Graph g{4, {{0, 1}, {1, 2}, {1, 3}}};
  std::vector<NodeId> sa{2}, sb{3};
  auto ta = deliveryTree(g, 0, sa);
  auto tb = deliveryTree(g, 0, sb);
  // two-edge trees sit far below a 1% false-positive estimate
  CHECK_FALSE(planCodedSubgraph(g, ta, tb, {1}, {2}, 1, {Trigger::FalsePositiveRate}, 1));
  TriggerContext low{Trigger::FalsePositiveRate, 1e-9};
  CHECK(planCodedSubgraph(g, ta, tb, {1}, {2}, 1, low, 1));

  TriggerContext busy{Trigger::Congestion};
  busy.utilization[{0, 1}] = 0.5;
  CHECK_FALSE(planCodedSubgraph(g, ta, tb, {1}, {2}, 1, busy, 1));
  busy.utilization[{0, 1}] = 0.95;
  CHECK(planCodedSubgraph(g, ta, tb, {1}, {2}, 1, busy, 1));
}

} // TEST_SUITE
