#include "nccn/sim/ccn-apps.hpp"
#include "nccn/sim/consumer.hpp"
#include "nccn/sim/scenario.hpp"

#include <doctest.h>

#include <fstream>

using namespace nccn;
using namespace nccn::sim;

namespace {

std::filesystem::path
scenarioFile(const std::string& name)
{
  return std::filesystem::path(NCCN_SCENARIO_DIR) / (name + ".json");
}

Topology
pair(double latency, std::optional<double> capacity, double loss)
{
  Topology t;
  t.addNode("a", NodeRole::Router);
  t.addNode("b", NodeRole::Router);
  t.addLink({"a", "b", latency, capacity, loss});
  return t;
}

ccn::DataPacket
someData()
{
  ccn::DataPacket d;
  d.name = ccn::ContentName::parse("x/y/C1");
  d.payload = Bytes(10, 1);
  return d;
}

struct Arrival
{
  double time;
  NodeIndex to;
  std::size_t face;
};

ScenarioConfig
config(const nlohmann::json& j)
{
  return parseScenario(j);
}

} // namespace

TEST_SUITE("simulator")
{

TEST_CASE("empty schedule completes immediately")
{
  Simulator sim;
  CHECK(sim.run() == 0);
  CHECK(sim.now() == 0);
  CHECK(sim.pending() == 0);
}

TEST_CASE("equal-time events run in scheduling order")
{
  Simulator sim;
  std::vector<int> order;
  sim.schedule(1.0, [&] { order.push_back(2); });
  sim.schedule(0.5, [&] { order.push_back(1); });
  for (int i = 3; i < 8; ++i) {
    sim.schedule(1.0, [&order, i] { order.push_back(i); });
  }
  sim.run();
  CHECK(order == std::vector<int>{1, 2, 3, 4, 5, 6, 7});
  CHECK(sim.now() == 1.0);
}

TEST_CASE("events scheduled from events keep their order")
{
  Simulator sim;
  std::vector<std::string> order;
  sim.schedule(1, [&] {
    order.push_back("a");
    sim.scheduleIn(0, [&] { order.push_back("c"); });
  });
  sim.schedule(1, [&] { order.push_back("b"); });
  sim.run();
  CHECK(order == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("past-dated event is a bug")
{
  Simulator sim;
  sim.schedule(2, [] {});
  sim.run();
  CHECK_THROWS_AS(sim.schedule(1, [] {}), InvariantViolation);
  CHECK_THROWS_AS(sim.schedule(std::nan(""), [] {}), InvariantViolation);
}

TEST_CASE("run stops at the horizon")
{
  Simulator sim;
  int fired = 0;
  sim.schedule(1, [&] { ++fired; });
  sim.schedule(3, [&] { ++fired; });
  CHECK(sim.run(2) == 1);
  CHECK(fired == 1);
  CHECK(sim.pending() == 1);
}

} // TEST_SUITE simulator

TEST_SUITE("network")
{

TEST_CASE("loss 0 arrives at latency plus serialization, FIFO per channel")
{
  Simulator sim;
  auto topo = pair(0.01, 10.0, 0);
  SeededRandom rng(1);
  Network net(sim, topo, rng);
  std::vector<Arrival> arrivals;
  net.onDeliver([&](NodeIndex to, std::size_t face, const Envelope&) { arrivals.push_back({sim.now(), to, face}); });
  for (int i = 0; i < 3; ++i) {
    net.send(0, 0, {someData(), std::nullopt});
  }
  net.send(1, 0, {someData(), std::nullopt}); // other direction has its own queue
  sim.run();
  REQUIRE(arrivals.size() == 4);
  CHECK(arrivals[0].time == doctest::Approx(0.11));
  CHECK(arrivals[0].to == 1);
  CHECK(arrivals[1].time == doctest::Approx(0.11));
  CHECK(arrivals[1].to == 0);
  CHECK(arrivals[2].time == doctest::Approx(0.21));
  CHECK(arrivals[3].time == doctest::Approx(0.31));
}

TEST_CASE("Interests take no serialization time")
{
  Simulator sim;
  auto topo = pair(0.01, 1.0, 0);
  SeededRandom rng(1);
  Network net(sim, topo, rng);
  std::vector<double> times;
  net.onDeliver([&](NodeIndex, std::size_t, const Envelope&) { times.push_back(sim.now()); });
  net.send(0, 0, {ccn::makeInterest(ccn::ContentName::parse("x/C1"), 1), std::nullopt});
  sim.run();
  REQUIRE(times.size() == 1);
  CHECK(times[0] == doctest::Approx(0.01));
}

TEST_CASE("loss 1 never arrives")
{
  Simulator sim;
  auto topo = pair(0.01, std::nullopt, 1.0);
  SeededRandom rng(1);
  Network net(sim, topo, rng);
  int arrivals = 0;
  net.onDeliver([&](NodeIndex, std::size_t, const Envelope&) { ++arrivals; });
  for (int i = 0; i < 50; ++i) {
    net.send(0, 0, {someData(), std::nullopt});
  }
  sim.run();
  CHECK(arrivals == 0);
  CHECK(net.stats()[0].transmissions == 50);
  CHECK(net.stats()[0].losses == 50);
}

TEST_CASE("Bernoulli loss rate")
{
  Simulator sim;
  auto topo = pair(0.01, std::nullopt, 0.25);
  SeededRandom rng(99);
  Network net(sim, topo, rng);
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    net.send(0, 0, {someData(), std::nullopt});
  }
  double rate = static_cast<double>(net.stats()[0].losses) / n;
  double se = std::sqrt(0.25 * 0.75 / n);
  CHECK(std::abs(rate - 0.25) < 4 * se);
}

TEST_CASE("scripted drop removes exactly the named transmission")
{
  Simulator sim;
  auto topo = pair(0.01, std::nullopt, 0);
  SeededRandom rng(1);
  Network net(sim, topo, rng);
  net.scriptDrop(0, 2);
  std::vector<std::size_t> got;
  net.onDeliver([&](NodeIndex, std::size_t, const Envelope& e) {
    got.push_back(std::get<ccn::DataPacket>(e.frame).payload.size());
  });
  for (std::size_t i = 1; i <= 3; ++i) {
    auto d = someData();
    d.payload.resize(i);
    net.send(0, 0, {d, std::nullopt});
  }
  net.send(1, 0, {someData(), std::nullopt}); // reverse channel is unaffected
  sim.run();
  CHECK(got == std::vector<std::size_t>{1, 3, 10});
  CHECK(net.stats()[0].losses == 1);
}

TEST_CASE("causality: no arrival precedes its transmission plus latency")
{
  Simulator sim;
  Topology topo;
  for (auto n : {"a", "b", "c"}) {
    topo.addNode(n, NodeRole::Router);
  }
  topo.addLink({"a", "b", 0.003, 50.0, 0});
  topo.addLink({"b", "c", 0.007, std::nullopt, 0.1});
  topo.addLink({"a", "c", 0.001, 5.0, 0});
  SeededRandom rng(5);
  SeededRandom pick(6);
  Network net(sim, topo, rng);
  std::map<uint64_t, std::pair<double, std::size_t>> sent; // id -> (time, link)
  uint64_t violations = 0;
  uint64_t arrivals = 0;
  net.onDeliver([&](NodeIndex, std::size_t, const Envelope& e) {
    auto id = std::get<ccn::DataPacket>(e.frame).payload.size();
    auto [t, link] = sent.at(id);
    ++arrivals;
    if (sim.now() < t + topo.links()[link].latency - 1e-12) {
      ++violations;
    }
  });
  uint64_t id = 0;
  for (int i = 0; i < 300; ++i) {
    sim.schedule(pick.uniform(), [&] {
      NodeIndex from = pick.next() % 3;
      std::size_t face = pick.next() % topo.faces(from).size();
      auto d = someData();
      d.payload.resize(++id);
      sent[id] = {sim.now(), topo.faces(from)[face].link};
      net.send(from, face, {d, std::nullopt});
    });
  }
  sim.run();
  CHECK(arrivals > 200);
  CHECK(violations == 0);
}

} // TEST_SUITE network

TEST_SUITE("harness")
{

TEST_CASE("golden trace: plain fetch over a 4-node line")
{
  Topology t;
  t.addNode("C", NodeRole::Consumer);
  t.addNode("R1", NodeRole::Router);
  t.addNode("R2", NodeRole::Router);
  t.addNode("P", NodeRole::Repository);
  t.addLink({"C", "R1", 0.01, std::nullopt, 0});
  t.addLink({"R1", "R2", 0.01, std::nullopt, 0});
  t.addLink({"R2", "P", 0.01, std::nullopt, 0});
  const uint64_t seed = 11;
  Harness h(t, seed, true);

  Bytes data{1, 2, 3, 4};
  auto obj = std::make_shared<const ccn::ContentObject>(ccn::ContentName::parse("www.foo.com/Dir/File"), data, 4, 1);
  ccn::ForwarderConfig fc;
  fc.ncEnabled = false;
  h.install<ForwarderApp>(1, fc);
  h.install<ForwarderApp>(2, fc);
  h.install<ForwarderApp>(3, fc).forwarder().addProducer(obj);
  ConsumerConfig cc;
  cc.manifest = ObjectManifest::of(*obj);
  cc.nc = false;
  cc.rounds = 1;
  h.install<Consumer>(0, cc);
  h.run();

  // the consumer's first draw is its nonce; node n's stream is seeded from seed + mix64(n + 1)
  SeededRandom consumerRng(mix64(seed + mix64(1)));
  char nonce[17];
  std::snprintf(nonce, sizeof(nonce), "%016llx", static_cast<unsigned long long>(consumerRng.next()));
  std::string n(nonce);
  std::string expected = "0.010000000\tR1\tINT\t0\twww.foo.com/Dir/File/C1\t" + n + "\t\n"
                         "0.020000000\tR2\tINT\t0\twww.foo.com/Dir/File/C1\t" + n + "\t\n"
                         "0.030000000\tP\tINT\t0\twww.foo.com/Dir/File/C1\t" + n + "\t\n"
                         "0.040000000\tR2\tDATA\t1\twww.foo.com/Dir/File/C1\t\t\n"
                         "0.050000000\tR1\tDATA\t1\twww.foo.com/Dir/File/C1\t\t\n"
                         "0.060000000\tC\tDATA\t0\twww.foo.com/Dir/File/C1\t\t\n";
  CHECK(h.trace() == expected);
  auto m = h.collect();
  CHECK(m.consumers.at("C").completion == doctest::Approx(0.06));
  CHECK(m.links.at("C->R1").transmissions == 1);
  CHECK(m.links.at("R1->C").transmissions == 1);
}

TEST_CASE("retransmission recovers a lost Interest")
{
  Topology t;
  t.addNode("C", NodeRole::Consumer);
  t.addNode("P", NodeRole::Repository);
  t.addLink({"C", "P", 0.01, std::nullopt, 0});
  Harness h(t, 3, false);
  h.network().scriptDrop(0, 1); // C->P, first Interest
  Bytes data(8, 9);
  auto obj = std::make_shared<const ccn::ContentObject>(ccn::ContentName::parse("a/b"), data, 8, 1);
  h.install<ForwarderApp>(1, ccn::ForwarderConfig{}).forwarder().addProducer(obj);
  ConsumerConfig cc;
  cc.manifest = ObjectManifest::of(*obj);
  cc.initialRtt = 0.1;
  h.install<Consumer>(0, cc);
  h.run();
  auto m = h.collect();
  const auto& c = m.consumers.at("C");
  CHECK(c.retransmissions == 1);
  REQUIRE(c.completion);
  CHECK(*c.completion == doctest::Approx(0.2 + 0.02));
}

} // TEST_SUITE harness

TEST_SUITE("scenarios")
{

TEST_CASE("Fig1 NC off: packet 1 cannot be recovered")
{
  auto r = runScenario(loadScenario(scenarioFile("fig1")), false);
  const auto& off = r.arm("nc_off").metrics.consumers.at("D");
  CHECK_FALSE(off.completion);
  CHECK(off.recovered == std::vector<uint32_t>{2, 3});
  CHECK(off.received == 4);
}

TEST_CASE("Fig1 NC on: decoded from the surviving combinations")
{
  auto r = runScenario(loadScenario(scenarioFile("fig1")), false);
  const auto& on = r.arm("nc_on").metrics.consumers.at("D");
  CHECK(on.received == 4);
  CHECK(on.innovative == 3);
  CHECK(on.completion);
  CHECK(r.arm("nc_on").metrics.totalTransmissions() == r.arm("nc_off").metrics.totalTransmissions());
}

TEST_CASE("Multipath k=2: one duplicate without NC, none with NC")
{
  auto r = runScenario(loadScenario(scenarioFile("multipath")), true);
  const auto& off = r.arm("nc_off").metrics.consumers.at("N");
  const auto& on = r.arm("nc_on").metrics.consumers.at("N");
  CHECK(off.received == 2);
  CHECK(off.wasted == 1);
  CHECK(on.received == 2);
  CHECK(on.wasted == 0);

  // the same count read off the trace: both arrivals at N name C1 without NC
  const auto& trace = r.arm("nc_off").trace;
  std::size_t c1 = 0;
  for (std::size_t pos = 0; (pos = trace.find("\tN\tDATA\t", pos)) != std::string::npos; ++pos) {
    auto end = trace.find('\n', pos);
    c1 += trace.substr(pos, end - pos).find("/C1\t") != std::string::npos;
  }
  CHECK(c1 == 2);
}

TEST_CASE("same scenario and seed give identical outputs")
{
  for (std::string name : {"fig1", "multipath", "caching_delay", "bloom_fp"}) {
    CAPTURE(name);
    auto cfg = loadScenario(scenarioFile(name));
    auto a = runScenario(cfg, true);
    auto b = runScenario(cfg, true);
    CHECK(a.toJson().dump() == b.toJson().dump());
    REQUIRE(a.arms.size() == b.arms.size());
    for (std::size_t i = 0; i < a.arms.size(); ++i) {
      CHECK(!a.arms[i].trace.empty());
      CHECK(a.arms[i].trace == b.arms[i].trace);
    }
  }
}

TEST_CASE("different seeds change the lossy run")
{
  auto cfg = loadScenario(scenarioFile("multipath"));
  cfg.linkOverrides.push_back({"N", "S1", std::nullopt, std::nullopt, 0.3});
  cfg.workload["rounds"] = 0;
  auto a = runScenario(cfg, true);
  cfg.seed += 1;
  auto b = runScenario(cfg, true);
  CHECK(a.arms[0].trace != b.arms[0].trace);
}

TEST_CASE("conservation: innovative + wasted + lost = addressed")
{
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    for (std::string name : {"fig1", "multipath", "caching_delay", "rate_additivity"}) {
      CAPTURE(name);
      CAPTURE(seed);
      auto cfg = loadScenario(scenarioFile(name));
      cfg.seed = seed;
      cfg.workload.erase("rounds");
      if (cfg.kind != ScenarioKind::Fig1) {
        auto topo = buildTopology(cfg);
        for (const auto& l : topo.links()) {
          cfg.linkOverrides.push_back({l.a, l.b, std::nullopt, std::nullopt, 0.2});
        }
      }
      if (cfg.kind == ScenarioKind::Multipath) {
        cfg.workload["rounds"] = 0;
      }
      for (const auto& arm : runScenario(cfg, false).arms) {
        CAPTURE(arm.arm);
        for (const auto& [node, c] : arm.metrics.consumers) {
          CHECK(c.innovative + c.wasted == c.received);
          CHECK(c.received + c.lost == c.addressed);
        }
      }
    }
  }
}

TEST_CASE("Bloom plane: coded segment keeps subscriber deliveries")
{
  auto r = runScenario(loadScenario(scenarioFile("bloom_fp")), false);
  const auto& on = r.arm("nc_on");
  const auto& off = r.arm("nc_off");
  CHECK(on.summary["binding_active"] == true);
  CHECK(on.deliveries == off.deliveries);
  CHECK(on.deliveries.size() == 3);
  for (const auto& [node, list] : off.deliveries) {
    CHECK(list.size() == 40);
  }
  CHECK(on.metrics.generationLosses == 0);
}

TEST_CASE("Bloom plane: an underfull last window is padded and flushed")
{
  auto cfg = loadScenario(scenarioFile("bloom_fp"));
  cfg.workload["packets"] = 42; // k = 4 leaves two packets per flow in the last window
  auto r = runScenario(cfg, false);
  CHECK(r.arm("nc_on").metrics.padFlushes == 1);
  CHECK(r.arm("nc_on").deliveries == r.arm("nc_off").deliveries);
  for (const auto& [node, list] : r.arm("nc_on").deliveries) {
    CHECK(list.size() == 42);
  }
}

TEST_CASE("Bloom plane: a slower flow stalls the ingress but loses nothing")
{
  auto cfg = loadScenario(scenarioFile("bloom_fp"));
  cfg.workload["period_b"] = 0.004;
  auto r = runScenario(cfg, false);
  CHECK(r.arm("nc_on").metrics.stalls > 0);
  CHECK(r.arm("nc_on").metrics.generationLosses == 0);
  CHECK(r.arm("nc_on").deliveries == r.arm("nc_off").deliveries);
}

TEST_CASE("Bloom plane: a lossy shared segment shows up as generation losses")
{
  auto cfg = loadScenario(scenarioFile("bloom_fp"));
  cfg.compare = false;
  cfg.nc = true;
  cfg.linkOverrides.push_back({"s3", "s4", std::nullopt, std::nullopt, 0.5});
  auto r = runScenario(cfg, false);
  CHECK(r.arms[0].metrics.generationLosses > 0);
}

} // TEST_SUITE scenarios

TEST_SUITE("config")
{

TEST_CASE("valid minimal config takes defaults")
{
  auto c = config({{"scenario", "multipath"}});
  CHECK(c.kind == ScenarioKind::Multipath);
  CHECK(c.name == "multipath");
  CHECK(c.chunkSize == 1024);
  CHECK_FALSE(c.compare);
}

TEST_CASE("config errors name the problem")
{
  auto fails = [](const nlohmann::json& j, const std::string& fragment) {
    try {
      parseScenario(j);
    }
    catch (const ConfigError& e) {
      return std::string(e.what()).find(fragment) != std::string::npos;
    }
    return false;
  };
  CHECK(fails(nlohmann::json::array(), "JSON object"));
  CHECK(fails({{"seed", 1}}, "missing key 'scenario'"));
  CHECK(fails({{"scenario", "fig9"}}, "unknown kind 'fig9'"));
  CHECK(fails({{"scenario", "fig1"}, {"colour", 1}}, "unknown key 'colour'"));
  CHECK(fails({{"scenario", "fig1"}, {"seed", -1}}, "seed: expected"));
  CHECK(fails({{"scenario", "fig1"}, {"coding", {{"k", 0}}}}, "coding.k"));
  CHECK(fails({{"scenario", "fig1"}, {"workload", {{"window", 2}}}}, "unknown key 'window'"));
  CHECK(fails({{"scenario", "fig1"}, {"workload", {{"chunks", "three"}}}}, "workload.chunks"));
  CHECK(fails({{"scenario", "fig1"}, {"topology", "mesh"}}, "unknown name 'mesh'"));
  CHECK(fails({{"scenario", "fig1"}, {"topology", {{"drops", {{{"channel", "S->X"}, {"ordinal", 1}}}}}}},
              "unknown channel 'S->X'"));
  CHECK(fails({{"scenario", "multipath"}, {"topology", {{"links", {{{"a", "N"}, {"b", "Q"}}}}}}}, "no link"));
  CHECK(fails({{"scenario", "multipath"}, {"topology", {{"links", {{{"a", "N"}, {"b", "S1"}, {"latency", 0}}}}}}},
              "latency"));
  CHECK(fails({{"scenario", "multipath"}, {"topology", {{"links", {{{"a", "N"}, {"b", "S1"}, {"loss", 1.5}}}}}}},
              "loss"));
}

TEST_CASE("malformed JSON reports line and column")
{
  auto path = std::filesystem::temp_directory_path() / "nccn-malformed.json";
  {
    std::ofstream f(path);
    f << "{\n  \"scenario\": \"fig1\",\n  \"seed\": ,\n}\n";
  }
  try {
    loadScenario(path);
    FAIL("expected a config error");
  }
  catch (const ConfigError& e) {
    std::string msg = e.what();
    CHECK(msg.find(":3:11:") != std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST_CASE("every shipped scenario parses")
{
  for (const auto& entry : std::filesystem::directory_iterator(NCCN_SCENARIO_DIR)) {
    if (entry.path().extension() == ".json") {
      CAPTURE(entry.path().string());
      CHECK_NOTHROW(loadScenario(entry.path()));
    }
  }
}

} // TEST_SUITE config
