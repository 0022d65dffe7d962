#include "nccn/sim/scenario.hpp"
#include "nccn/bloom/planner.hpp"
#include "nccn/sim/ccn-apps.hpp"
#include "nccn/sim/consumer.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace nccn::sim {

using nlohmann::json;

namespace {

enum class Type { Uint, Number, String, Bool };

struct KeySpec
{
  const char* key;
  Type type;
};

const std::map<ScenarioKind, std::vector<KeySpec>>&
workloadKeys()
{
  static const std::map<ScenarioKind, std::vector<KeySpec>> keys{
    {ScenarioKind::Fig1, {{"chunks", Type::Uint}, {"packets_per_path", Type::Uint}, {"spacing", Type::Number}}},
    {ScenarioKind::Multipath,
     {{"chunks", Type::Uint}, {"rounds", Type::Uint}, {"mode", Type::String}, {"window", Type::Uint}}},
    {ScenarioKind::CachingDelay, {{"chunks", Type::Uint}, {"rounds", Type::Uint}, {"cs_capacity", Type::Uint}}},
    {ScenarioKind::RateAdditivity, {{"chunks", Type::Uint}, {"window", Type::Uint}}},
    {ScenarioKind::BloomFp,
     {{"packets", Type::Uint}, {"period", Type::Number}, {"period_b", Type::Number}, {"payload_min", Type::Uint},
      {"payload_max", Type::Uint}, {"trigger", Type::String}, {"fp_threshold", Type::Number}, {"stubs", Type::Uint}}},
  };
  return keys;
}

const std::map<std::string, ScenarioKind, std::less<>> KINDS{
  {"fig1", ScenarioKind::Fig1},
  {"multipath", ScenarioKind::Multipath},
  {"caching_delay", ScenarioKind::CachingDelay},
  {"rate_additivity", ScenarioKind::RateAdditivity},
  {"bloom_fp", ScenarioKind::BloomFp},
};

bool
hasType(const json& v, Type t)
{
  switch (t) {
  case Type::Uint:
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<int64_t>() >= 0);
  case Type::Number:
    return v.is_number();
  case Type::String:
    return v.is_string();
  case Type::Bool:
    return v.is_boolean();
  }
  return false;
}

const char*
typeName(Type t)
{
  switch (t) {
  case Type::Uint:
    return "a non-negative integer";
  case Type::Number:
    return "a number";
  case Type::String:
    return "a string";
  case Type::Bool:
    return "a boolean";
  }
  return "?";
}

void
expect(const json& j, const std::string& path, Type t)
{
  if (!hasType(j, t)) {
    throw ConfigError(path + ": expected " + typeName(t));
  }
}

void
rejectUnknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed)
{
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

std::optional<double>
optNumber(const json& obj, const char* key, const std::string& where)
{
  if (!obj.contains(key)) {
    return std::nullopt;
  }
  expect(obj[key], where + "." + key, Type::Number);
  return obj[key].get<double>();
}

template<typename T>
T
param(const json& workload, const char* key, T fallback)
{
  return workload.contains(key) ? workload[key].get<T>() : fallback;
}

std::size_t
defaultK(ScenarioKind kind)
{
  switch (kind) {
  case ScenarioKind::Fig1:
    return 3;
  case ScenarioKind::Multipath:
  case ScenarioKind::CachingDelay:
    return 2;
  case ScenarioKind::RateAdditivity:
    return 40;
  case ScenarioKind::BloomFp:
    return 4;
  }
  return 1;
}

std::size_t
windowOf(const ScenarioConfig& c)
{
  return c.k != 0 ? c.k : defaultK(c.kind);
}

std::string
locate(std::string_view text, std::size_t byte)
{
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    }
    else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

// ---- topologies ----

struct BloomShape
{
  Topology topo;
  std::vector<std::string> subscribersA;
  std::vector<std::string> subscribersB;
};

void
chain(Topology& t, const std::vector<std::string>& names, double latency)
{
  for (std::size_t i = 1; i < names.size(); ++i) {
    t.addLink({names[i - 1], names[i], latency, std::nullopt, 0});
  }
}

/// Two sources whose trees share a long middle segment. Flow A enters from
/// its own chain, flow B from another; both continue over the shared chain;
/// B leaves halfway down it and again at the far end, where A leaves too.
/// Every backbone node carries leaf stubs that no tree uses.
BloomShape
bloomShape(std::size_t stubs)
{
  constexpr double LAT = 0.002;
  BloomShape s;
  auto& t = s.topo;
  auto seq = [](const std::string& prefix, std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 1; i <= n; ++i) {
      v.push_back(prefix + std::to_string(i));
    }
    return v;
  };
  std::vector<std::string> backbone;
  auto add = [&](const std::vector<std::string>& names) {
    for (const auto& n : names) {
      if (!t.find(n)) {
        t.addNode(n, NodeRole::Router);
        backbone.push_back(n);
      }
    }
  };

  std::vector<std::string> chainA{"SA"};
  for (auto& n : seq("a", 8)) chainA.push_back(n);
  chainA.push_back("I");
  std::vector<std::string> chainB{"SB"};
  for (auto& n : seq("b", 8)) chainB.push_back(n);
  chainB.push_back("I");
  std::vector<std::string> shared{"I"};
  for (auto& n : seq("s", 11)) shared.push_back(n);
  shared.push_back("E");
  std::vector<std::string> midB{"s6"};
  for (auto& n : seq("mb", 4)) midB.push_back(n);
  std::vector<std::string> endA{"E"};
  for (auto& n : seq("ea", 6)) endA.push_back(n);
  std::vector<std::string> endB{"E"};
  for (auto& n : seq("eb", 4)) endB.push_back(n);

  for (const auto* c : {&chainA, &chainB, &shared, &midB, &endA, &endB}) {
    add(*c);
    chain(t, *c, LAT);
  }
  for (const auto& n : std::vector<std::string>(backbone)) {
    for (std::size_t i = 1; i <= stubs; ++i) {
      auto stub = "x_" + n + "_" + std::to_string(i);
      t.addNode(stub, NodeRole::Router);
      t.addLink({n, stub, LAT, std::nullopt, 0});
    }
  }
  s.subscribersA = {endA.back()};
  s.subscribersB = {midB.back(), endB.back()};
  return s;
}

Topology
canonical(const ScenarioConfig& c)
{
  Topology t;
  switch (c.kind) {
  case ScenarioKind::Fig1:
    t.addNode("S", NodeRole::Repository);
    t.addNode("R1", NodeRole::Router);
    t.addNode("R2", NodeRole::Router);
    t.addNode("D", NodeRole::Consumer);
    t.addLink({"S", "R1", 0.01, std::nullopt, 0});
    t.addLink({"S", "R2", 0.01, std::nullopt, 0});
    t.addLink({"R1", "D", 0.01, std::nullopt, 0});
    t.addLink({"R2", "D", 0.01, std::nullopt, 0});
    break;
  case ScenarioKind::Multipath:
    t.addNode("N", NodeRole::Consumer);
    t.addNode("S1", NodeRole::Repository);
    t.addNode("S2", NodeRole::Repository);
    t.addLink({"N", "S1", 0.02, std::nullopt, 0});
    t.addLink({"N", "S2", 0.01, std::nullopt, 0});
    break;
  case ScenarioKind::CachingDelay:
    t.addNode("N", NodeRole::Consumer);
    t.addNode("R", NodeRole::Router);
    t.addNode("repoA", NodeRole::Repository);
    t.addNode("repoB", NodeRole::Repository);
    t.addLink({"N", "R", 0.125, std::nullopt, 0});
    t.addLink({"R", "repoA", 0.25, std::nullopt, 0});
    t.addLink({"R", "repoB", 0.25, std::nullopt, 0});
    break;
  case ScenarioKind::RateAdditivity:
    t.addNode("N", NodeRole::Consumer);
    t.addNode("fast", NodeRole::Repository);
    t.addNode("slow", NodeRole::Repository);
    t.addLink({"N", "fast", 0.005, 30.0, 0});
    t.addLink({"N", "slow", 0.005, 10.0, 0});
    break;
  case ScenarioKind::BloomFp:
    t = bloomShape(param<std::size_t>(c.workload, "stubs", 2)).topo;
    break;
  }
  return t;
}

std::size_t
channelOf(const Topology& t, const std::string& label)
{
  for (std::size_t ch = 0; ch < t.channelCount(); ++ch) {
    if (t.channelLabel(ch) == label) {
      return ch;
    }
  }
  throw ConfigError("topology.drops: unknown channel '" + label + "'");
}

// ---- arms ----

std::shared_ptr<const ccn::ContentObject>
makeObject(const ScenarioConfig& c, std::size_t chunks)
{
  SeededRandom rng(mix64(c.seed ^ 0x6f626a656374ULL));
  Bytes data(chunks * c.chunkSize);
  for (auto& b : data) {
    b = rng.byte();
  }
  return std::make_shared<const ccn::ContentObject>(ccn::ContentName::parse("/www.foo.com/Dir/File"), data,
                                                    c.chunkSize, windowOf(c));
}

ccn::ForwarderConfig
forwarderConfig(bool nc)
{
  ccn::ForwarderConfig fc;
  fc.ncEnabled = nc;
  fc.cacheCoded = nc;
  return fc;
}

json
consumerSummary(const Metrics& m, const std::string& consumer)
{
  const auto& c = m.consumers.at(consumer);
  json s;
  s["consumer"] = consumer;
  s["received"] = c.received;
  s["innovative"] = c.innovative;
  s["wasted"] = c.wasted;
  s["useful_ratio"] = c.received == 0 ? 0.0 : static_cast<double>(c.innovative) / static_cast<double>(c.received);
  s["complete"] = c.completion.has_value();
  s["completion_time"] = c.completion ? json(*c.completion) : json(nullptr);
  s["second_chunk_time"] = c.retrievalTimes.size() >= 2 ? json(c.retrievalTimes[1]) : json(nullptr);
  s["recovered"] = c.recovered;
  s["total_transmissions"] = m.totalTransmissions();
  return s;
}

void
applyDrops(Harness& h, const ScenarioConfig& c, std::vector<ScriptedDrop> defaults)
{
  for (const auto& d : c.drops.value_or(defaults)) {
    h.network().scriptDrop(channelOf(h.topology(), d.channel), d.ordinal);
  }
}

ArmResult
finish(Harness& h, std::string arm, json summary, bool trace)
{
  ArmResult r;
  r.arm = std::move(arm);
  r.metrics = h.collect();
  r.summary = std::move(summary);
  if (trace) {
    r.trace = h.trace();
  }
  return r;
}

ArmResult
runCcn(const ScenarioConfig& c, bool nc, bool trace)
{
  const auto& w = c.workload;
  Harness h(buildTopology(c), c.seed, trace);
  const auto& topo = h.topology();
  std::string consumer;
  std::size_t chunks = 0;
  ConsumerConfig cc;
  cc.nc = nc;

  switch (c.kind) {
  case ScenarioKind::Fig1: {
    chunks = param<std::size_t>(w, "chunks", 3);
    auto obj = makeObject(c, chunks);
    consumer = "D";
    applyDrops(h, c, {{"S->R1", 1}, {"S->R2", 1}});
    h.install<PushSource>(topo.node("S"), PushSource::Config{obj, nc, param<std::size_t>(w, "packets_per_path", 3),
                                                             param<double>(w, "spacing", 0.001), topo.node("D")});
    h.install<Relay>(topo.node("R1"));
    h.install<Relay>(topo.node("R2"));
    cc.manifest = ObjectManifest::of(*obj);
    cc.mode = RequestMode::Passive;
    break;
  }
  case ScenarioKind::Multipath:
  case ScenarioKind::CachingDelay:
  case ScenarioKind::RateAdditivity: {
    bool caching = c.kind == ScenarioKind::CachingDelay;
    bool rate = c.kind == ScenarioKind::RateAdditivity;
    chunks = param<std::size_t>(w, "chunks", rate ? 40 : 2);
    auto obj = makeObject(c, chunks);
    consumer = "N";
    applyDrops(h, c, {});
    std::vector<std::string> repos = caching ? std::vector<std::string>{"repoA", "repoB"}
                                     : rate  ? std::vector<std::string>{"fast", "slow"}
                                             : std::vector<std::string>{"S1", "S2"};
    for (const auto& r : repos) {
      h.install<ForwarderApp>(topo.node(r), forwarderConfig(nc)).forwarder().addProducer(obj);
    }
    if (caching) {
      auto fc = forwarderConfig(nc);
      auto cap = param<std::size_t>(w, "cs_capacity", 0);
      fc.csCapacity = cap == 0 ? std::numeric_limits<std::size_t>::max() : cap;
      h.install<ForwarderApp>(topo.node("R"), fc);
    }
    cc.manifest = ObjectManifest::of(*obj);
    if (rate) {
      cc.mode = RequestMode::Pipeline;
      cc.window = param<std::size_t>(w, "window", 4);
    }
    else {
      auto mode = param<std::string>(w, "mode", "round");
      if (mode != "round" && mode != "pipeline") {
        throw ConfigError("workload.mode: expected \"round\" or \"pipeline\"");
      }
      cc.mode = mode == "round" ? RequestMode::Round : RequestMode::Pipeline;
      cc.rounds = param<std::size_t>(w, "rounds", caching ? 0 : 1);
      cc.window = param<std::size_t>(w, "window", 1);
    }
    break;
  }
  case ScenarioKind::BloomFp:
    break;
  }
  h.install<Consumer>(topo.node(consumer), cc);
  h.run(c.until);

  auto arm = finish(h, nc ? "nc_on" : "nc_off", json::object(), trace);
  arm.summary = consumerSummary(arm.metrics, consumer);
  arm.summary["chunks"] = chunks;
  if (c.kind == ScenarioKind::RateAdditivity) {
    double total = 0;
    for (const auto& l : topo.links()) {
      if (l.a == "N" || l.b == "N") {
        total += l.capacity.value_or(std::numeric_limits<double>::infinity());
      }
    }
    arm.summary["ideal_completion"] = static_cast<double>(chunks) / total;
  }
  return arm;
}

bloom::Trigger
triggerOf(const std::string& s)
{
  if (s == "false_positive_rate") {
    return bloom::Trigger::FalsePositiveRate;
  }
  if (s == "congestion") {
    return bloom::Trigger::Congestion;
  }
  if (s == "resilience") {
    return bloom::Trigger::Resilience;
  }
  throw ConfigError("workload.trigger: expected \"false_positive_rate\", \"congestion\" or \"resilience\"");
}

ArmResult
runBloom(const ScenarioConfig& c, bool coded, bool trace)
{
  const auto& w = c.workload;
  auto shape = bloomShape(param<std::size_t>(w, "stubs", 2));
  Topology topo = buildTopology(c);
  auto packets = param<std::size_t>(w, "packets", 40);
  auto period = param<double>(w, "period", 0.001);
  auto periodB = param<double>(w, "period_b", period);
  auto minPayload = param<std::size_t>(w, "payload_min", 20);
  auto maxPayload = param<std::size_t>(w, "payload_max", 100);
  if (minPayload < 1 || maxPayload < minPayload || maxPayload > 65535) {
    throw ConfigError("workload: payload sizes must satisfy 1 <= payload_min <= payload_max <= 65535");
  }
  bloom::TriggerContext ctx;
  ctx.trigger = triggerOf(param<std::string>(w, "trigger", "false_positive_rate"));
  ctx.fpThreshold = param<double>(w, "fp_threshold", 0.01);

  bloom::Graph graph;
  graph.nodeCount = topo.nodes().size();
  for (std::size_t i = 0; i < topo.links().size(); ++i) {
    graph.links.emplace_back(static_cast<bloom::NodeId>(topo.node(topo.links()[i].a)),
                             static_cast<bloom::NodeId>(topo.node(topo.links()[i].b)));
  }
  auto ids = [&](const std::vector<std::string>& names) {
    std::vector<bloom::NodeId> v;
    for (const auto& n : names) {
      v.push_back(static_cast<bloom::NodeId>(topo.node(n)));
    }
    return v;
  };
  auto subsA = ids(shape.subscribersA);
  auto subsB = ids(shape.subscribersB);
  auto sa = topo.node("SA");
  auto sb = topo.node("SB");
  auto treeA = bloom::deliveryTree(graph, static_cast<bloom::NodeId>(sa), subsA);
  auto treeB = bloom::deliveryTree(graph, static_cast<bloom::NodeId>(sb), subsB);
  bloom::FlowId flowA{fnv1a64("flow/A")};
  bloom::FlowId flowB{fnv1a64("flow/B")};

  BloomPlan plan;
  plan.linkSeed = mix64(c.seed ^ 0x6c696e6bULL);
  plan.generationTimeout = 10 * topo.maxLatency();
  plan.edgeSets.resize(5);
  plan.edgeSets[0] = {treeA.begin(), treeA.end()};
  plan.edgeSets[4] = {treeB.begin(), treeB.end()};
  for (auto n : subsA) {
    plan.subscriptions[n].insert(flowA.value);
  }
  for (auto n : subsB) {
    plan.subscriptions[n].insert(flowB.value);
  }
  if (coded) {
    plan.binding = bloom::planCodedSubgraph(graph, treeA, treeB, flowA, flowB, windowOf(c), ctx, plan.linkSeed);
  }

  BloomSourceSpec a{flowA, bloom::buildZFilter(treeA, plan.linkSeed), 0, packets, period, 0, minPayload, maxPayload};
  BloomSourceSpec b{flowB, bloom::buildZFilter(treeB, plan.linkSeed), 4, packets, periodB, 0, minPayload, maxPayload};
  if (plan.binding) {
    const auto& bd = *plan.binding;
    plan.edgeSets[1] = {bd.shared.begin(), bd.shared.end()};
    plan.edgeSets[2] = {bd.aOnly.begin(), bd.aOnly.end()};
    plan.edgeSets[3] = {bd.bOnly.begin(), bd.bOnly.end()};
    a.filter = bd.filterA;
    a.intended = 2;
    b.filter = bd.filterB;
    b.intended = 3;
  }

  Harness h(std::move(topo), c.seed, trace);
  h.observeTransmissions([&](std::size_t ch, const Envelope& e, bool) {
    const auto* f = std::get_if<BloomFrame>(&e.frame);
    if (f == nullptr) {
      return;
    }
    bloom::DirectedEdge edge{static_cast<bloom::NodeId>(h.topology().channelSource(ch)),
                             static_cast<bloom::NodeId>(h.topology().channelTarget(ch))};
    if (plan.edgeSets.at(f->intended).count(edge) == 0) {
      ++h.live().fpDeliveries;
    }
  });
  for (NodeIndex n = 0; n < h.topology().nodes().size(); ++n) {
    std::vector<BloomSourceSpec> sources;
    if (n == sa) {
      sources.push_back(a);
    }
    if (n == sb) {
      sources.push_back(b);
    }
    h.install<BloomNode>(n, plan, std::move(sources));
  }
  h.run(c.until);

  auto arm = finish(h, coded ? "nc_on" : "nc_off", json::object(), trace);
  uint64_t digest = 0xcbf29ce484222325ULL;
  std::size_t delivered = 0;
  for (auto& [node, list] : plan.deliveries) {
    std::sort(list.begin(), list.end());
    const auto& name = h.topology().nodes()[node].name;
    arm.deliveries[name] = list;
    delivered += list.size();
    digest = mix64(digest ^ fnv1a64(name));
    for (const auto& d : list) {
      digest = mix64(digest ^ d.flow ^ mix64(d.seq ^ mix64(d.payloadHash)));
    }
  }
  auto& s = arm.summary;
  s["binding_active"] = plan.binding.has_value();
  s["fp_deliveries"] = arm.metrics.fpDeliveries;
  s["delivered"] = delivered;
  s["delivery_digest"] = toHex(std::array<uint8_t, 8>{
    static_cast<uint8_t>(digest >> 56), static_cast<uint8_t>(digest >> 48), static_cast<uint8_t>(digest >> 40),
    static_cast<uint8_t>(digest >> 32), static_cast<uint8_t>(digest >> 24), static_cast<uint8_t>(digest >> 16),
    static_cast<uint8_t>(digest >> 8), static_cast<uint8_t>(digest)});
  s["generation_losses"] = arm.metrics.generationLosses;
  s["tree_edges"] = {{"a", treeA.size()}, {"b", treeB.size()}};
  if (plan.binding) {
    s["filter_edges"] = {{"a_only", plan.binding->aOnly.size()},
                         {"b_only", plan.binding->bOnly.size()},
                         {"shared", plan.binding->shared.size()}};
  }
  s["total_transmissions"] = arm.metrics.totalTransmissions();
  return arm;
}

} // namespace

std::string_view
kindName(ScenarioKind kind)
{
  for (const auto& [name, k] : KINDS) {
    if (k == kind) {
      return name;
    }
  }
  return "?";
}

ScenarioConfig
parseScenario(const json& j)
{
  if (!j.is_object()) {
    throw ConfigError("scenario config must be a JSON object");
  }
  rejectUnknown(j, "config", {"scenario", "name", "seed", "compare", "until", "coding", "workload", "topology"});
  if (!j.contains("scenario")) {
    throw ConfigError("config: missing key 'scenario'");
  }
  expect(j["scenario"], "scenario", Type::String);
  auto kindText = j["scenario"].get<std::string>();
  auto kind = KINDS.find(kindText);
  if (kind == KINDS.end()) {
    throw ConfigError("scenario: unknown kind '" + kindText + "'");
  }
  ScenarioConfig c;
  c.kind = kind->second;
  c.name = kindText;
  if (j.contains("name")) {
    expect(j["name"], "name", Type::String);
    c.name = j["name"].get<std::string>();
  }
  if (j.contains("seed")) {
    expect(j["seed"], "seed", Type::Uint);
    c.seed = j["seed"].get<uint64_t>();
  }
  if (j.contains("compare")) {
    expect(j["compare"], "compare", Type::Bool);
    c.compare = j["compare"].get<bool>();
  }
  if (auto u = optNumber(j, "until", "config")) {
    if (!(*u > 0)) {
      throw ConfigError("until: must be positive");
    }
    c.until = *u;
  }

  if (j.contains("coding")) {
    const auto& cod = j["coding"];
    if (!cod.is_object()) {
      throw ConfigError("coding: expected an object");
    }
    rejectUnknown(cod, "coding", {"k", "chunk_size", "nc"});
    if (cod.contains("k")) {
      expect(cod["k"], "coding.k", Type::Uint);
      c.k = cod["k"].get<std::size_t>();
      if (c.k < 1 || c.k > 255) {
        throw ConfigError("coding.k: must lie in 1..255");
      }
    }
    if (cod.contains("chunk_size")) {
      expect(cod["chunk_size"], "coding.chunk_size", Type::Uint);
      c.chunkSize = cod["chunk_size"].get<std::size_t>();
      if (c.chunkSize < 1 || c.chunkSize > 65535) {
        throw ConfigError("coding.chunk_size: must lie in 1..65535");
      }
    }
    if (cod.contains("nc")) {
      expect(cod["nc"], "coding.nc", Type::Bool);
      c.nc = cod["nc"].get<bool>();
    }
  }

  if (j.contains("workload")) {
    const auto& w = j["workload"];
    if (!w.is_object()) {
      throw ConfigError("workload: expected an object");
    }
    const auto& allowed = workloadKeys().at(c.kind);
    for (const auto& [key, value] : w.items()) {
      auto spec = std::find_if(allowed.begin(), allowed.end(), [&](const KeySpec& s) { return key == s.key; });
      if (spec == allowed.end()) {
        throw ConfigError("workload: unknown key '" + key + "' for scenario " + kindText);
      }
      expect(value, "workload." + key, spec->type);
    }
    c.workload = w;
    for (const char* positive : {"chunks", "packets", "window", "packets_per_path"}) {
      if (w.contains(positive) && w[positive].get<uint64_t>() == 0) {
        throw ConfigError(std::string("workload.") + positive + ": must be positive");
      }
    }
  }

  if (j.contains("topology")) {
    const auto& t = j["topology"];
    if (t.is_string()) {
      if (t.get<std::string>() != "canonical") {
        throw ConfigError("topology: unknown name '" + t.get<std::string>() + "'");
      }
    }
    else if (t.is_object()) {
      rejectUnknown(t, "topology", {"links", "drops"});
      if (t.contains("links")) {
        if (!t["links"].is_array()) {
          throw ConfigError("topology.links: expected an array");
        }
        for (std::size_t i = 0; i < t["links"].size(); ++i) {
          const auto& l = t["links"][i];
          auto where = "topology.links[" + std::to_string(i) + "]";
          if (!l.is_object()) {
            throw ConfigError(where + ": expected an object");
          }
          rejectUnknown(l, where, {"a", "b", "latency", "capacity", "loss"});
          if (!l.contains("a") || !l.contains("b")) {
            throw ConfigError(where + ": needs both endpoints 'a' and 'b'");
          }
          expect(l["a"], where + ".a", Type::String);
          expect(l["b"], where + ".b", Type::String);
          c.linkOverrides.push_back({l["a"].get<std::string>(), l["b"].get<std::string>(),
                                     optNumber(l, "latency", where), optNumber(l, "capacity", where),
                                     optNumber(l, "loss", where)});
        }
      }
      if (t.contains("drops")) {
        if (!t["drops"].is_array()) {
          throw ConfigError("topology.drops: expected an array");
        }
        c.drops.emplace();
        for (std::size_t i = 0; i < t["drops"].size(); ++i) {
          const auto& d = t["drops"][i];
          auto where = "topology.drops[" + std::to_string(i) + "]";
          if (!d.is_object()) {
            throw ConfigError(where + ": expected an object");
          }
          rejectUnknown(d, where, {"channel", "ordinal"});
          if (!d.contains("channel") || !d.contains("ordinal")) {
            throw ConfigError(where + ": needs 'channel' and 'ordinal'");
          }
          expect(d["channel"], where + ".channel", Type::String);
          expect(d["ordinal"], where + ".ordinal", Type::Uint);
          if (d["ordinal"].get<uint64_t>() == 0) {
            throw ConfigError(where + ".ordinal: counts from 1");
          }
          c.drops->push_back({d["channel"].get<std::string>(), d["ordinal"].get<uint64_t>()});
        }
      }
    }
    else {
      throw ConfigError("topology: expected \"canonical\" or an object");
    }
  }

  // resolve names now so a bad reference fails before anything runs
  auto topo = buildTopology(c);
  for (const auto& d : c.drops.value_or(std::vector<ScriptedDrop>{})) {
    channelOf(topo, d.channel);
  }
  return c;
}

ScenarioConfig
loadScenario(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError(path.string() + ": cannot read");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  auto text = buf.str();
  json j;
  try {
    j = json::parse(text);
  }
  catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ":" + locate(text, e.byte) + ": malformed JSON: " + e.what());
  }
  try {
    return parseScenario(j);
  }
  catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Topology
buildTopology(const ScenarioConfig& config)
{
  Topology t = canonical(config);
  for (const auto& o : config.linkOverrides) {
    auto i = t.findLink(o.a, o.b);
    if (!i) {
      throw ConfigError("topology.links: no link between '" + o.a + "' and '" + o.b + "'");
    }
    auto& l = t.link(*i);
    if (o.latency) {
      l.latency = *o.latency;
    }
    if (o.capacity) {
      l.capacity = *o.capacity;
    }
    if (o.loss) {
      l.loss = *o.loss;
    }
  }
  t.validate();
  return t;
}

const ArmResult&
ScenarioResult::arm(std::string_view name) const
{
  for (const auto& a : arms) {
    if (a.arm == name) {
      return a;
    }
  }
  throw std::out_of_range("no arm named " + std::string(name));
}

json
ScenarioResult::toJson() const
{
  json j;
  j["scenario"] = config.name;
  j["kind"] = kindName(config.kind);
  j["seed"] = config.seed;
  j["arms"] = json::object();
  for (const auto& a : arms) {
    j["arms"][a.arm] = {{"metrics", sim::toJson(a.metrics)}, {"summary", a.summary}};
  }
  return j;
}

std::string
ScenarioResult::toCsv() const
{
  std::string out = "scenario,arm,seed,metric,value\n";
  for (const auto& a : arms) {
    json j = {{"metrics", sim::toJson(a.metrics)}, {"summary", a.summary}};
    for (const auto& [metric, value] : flatten(j)) {
      out += config.name + "," + a.arm + "," + std::to_string(config.seed) + "," + metric + "," + value + "\n";
    }
  }
  return out;
}

ScenarioResult
runScenario(const ScenarioConfig& config, bool trace)
{
  ScenarioResult r;
  r.config = config;
  std::vector<bool> arms;
  if (config.compare) {
    arms = {true, false};
  }
  else {
    arms = {config.nc};
  }
  for (bool nc : arms) {
    r.arms.push_back(config.kind == ScenarioKind::BloomFp ? runBloom(config, nc, trace) : runCcn(config, nc, trace));
  }
  return r;
}

} // namespace nccn::sim
