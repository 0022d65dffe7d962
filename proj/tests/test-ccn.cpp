#include "nccn/ccn/forwarder.hpp"
#include "nccn/nc3n/nc3n.hpp"

#include "scripted-random.hpp"

#include <doctest.h>

#include <algorithm>
#include <list>

using namespace nccn;
using namespace nccn::ccn;

namespace {

const ContentName FILE_NAME = ContentName::parse("www.foo.com/Dir/File/");

std::shared_ptr<ContentObject>
makeObject(std::size_t chunks, std::size_t k = 2, std::size_t chunkSize = 4)
{
  Bytes data(chunks * chunkSize);
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = static_cast<uint8_t>(i * 7 + 1);
  }
  return std::make_shared<ContentObject>(FILE_NAME, data, chunkSize, k);
}

template<typename T>
const T*
find(const std::vector<Action>& actions)
{
  for (const auto& a : actions) {
    if (auto* p = std::get_if<T>(&a)) {
      return p;
    }
  }
  return nullptr;
}

} // namespace

TEST_SUITE("ccn.name")
{

TEST_CASE("implicit chunk resolution")
{
  CHECK(resolveImplicit(ContentName::parse("www.foo.com/Dir/File/")) == ChunkRequest{RequestKind::Plain, 1});
  CHECK(resolveImplicit(ContentName::parse("www.foo.com/Dir/File/C1")) == ChunkRequest{RequestKind::Plain, 1});
  CHECK(resolveImplicit(ContentName::parse("www.foo.com/Dir/File/C17")) == ChunkRequest{RequestKind::Plain, 17});
  CHECK(resolveImplicit(ContentName::parse("www.foo.com/Dir/File/NCChunk")).kind == RequestKind::Coded);
}

TEST_CASE("malformed chunk labels")
{
  CHECK_THROWS_AS(ContentName::parse("www.foo.com/Dir/File/C0"), ParseError);
  CHECK_THROWS_AS(ContentName::parse("www.foo.com/Dir/File/C01"), ParseError);
  CHECK_THROWS_AS(ContentName::parse("www.foo.com/Dir/File/C1x"), ParseError);
  CHECK_THROWS_AS(ContentName::parse(""), ParseError);
  CHECK_THROWS_AS(ContentName::parse("a//b"), ParseError);
  // not a chunk label at all
  CHECK(ContentName::parse("www.foo.com/Cats").isBare());
}

TEST_CASE("uri roundtrip and prefix relation")
{
  for (std::string uri : {"www.foo.com/Dir/File/", "www.foo.com/Dir/File/C3", "www.foo.com/Dir/File/NCChunk"}) {
    CHECK(ContentName::parse(uri).toUri() == uri);
  }
  auto dir = ContentName::parse("www.foo.com/Dir");
  CHECK(dir.isPrefixOf(FILE_NAME));
  CHECK(dir.isPrefixOf(FILE_NAME.withChunk(2)));
  CHECK_FALSE(FILE_NAME.isPrefixOf(dir));
  CHECK_FALSE(ContentName::parse("www.foo.com/Di").isPrefixOf(FILE_NAME));
  CHECK(FILE_NAME.withNcMarker().prefix() == FILE_NAME);
}

} // TEST_SUITE

TEST_SUITE("ccn.packet")
{

TEST_CASE("interest consistency checks")
{
  auto plain = makeInterest(FILE_NAME.withChunk(1), 7);
  CHECK_FALSE(checkInterest(plain));

  rlnc::Decoder empty({5}, 2, 4);
  auto nc = nc3n::makeNcInterest(FILE_NAME, empty, 9);
  CHECK_FALSE(checkInterest(nc));

  auto noFlag = nc;
  noFlag.selector.ncFlag = false;
  CHECK(checkInterest(noFlag)); // digest without flag

  auto ordered = nc;
  ordered.selector.orderRequired = true;
  CHECK(checkInterest(ordered));

  auto flaggedPlain = plain;
  flaggedPlain.selector.ncFlag = true;
  CHECK(checkInterest(flaggedPlain));
}

TEST_CASE("pit keys")
{
  CHECK(pitKey(makeInterest(FILE_NAME, 1)) == "www.foo.com/Dir/File/C1");
  CHECK(pitKey(makeInterest(FILE_NAME.withChunk(1), 2)) == "www.foo.com/Dir/File/C1");
  auto obj = makeObject(2);
  CHECK(pitKey(obj->plainData(1)) == "www.foo.com/Dir/File/C1");
}

} // TEST_SUITE

TEST_SUITE("ccn.fib")
{

TEST_CASE("longest prefix match")
{
  Fib fib;
  fib.addNextHop(ContentName::parse("www.foo.com"), 1);
  fib.addNextHop(ContentName::parse("www.foo.com/Dir"), 2);
  fib.addNextHop(ContentName::parse("www.foo.com/Dir"), 3);
  fib.addNextHop(ContentName::parse("www.foo.com/Dir"), 2);

  auto* hops = fib.longestPrefixMatch(FILE_NAME.withChunk(3));
  REQUIRE(hops != nullptr);
  CHECK(*hops == std::vector<FaceId>{2, 3});
  CHECK(*fib.longestPrefixMatch(ContentName::parse("www.foo.com/Other")) == std::vector<FaceId>{1});
  CHECK(fib.longestPrefixMatch(ContentName::parse("www.bar.com")) == nullptr);
  fib.erase(ContentName::parse("www.foo.com/Dir"));
  CHECK(*fib.longestPrefixMatch(FILE_NAME) == std::vector<FaceId>{1});
}

} // TEST_SUITE

TEST_SUITE("ccn.pit")
{

TEST_CASE("faces are unique and entries expire")
{
  Pit pit(4.0);
  auto& e = pit.create("k", 0.0);
  e.addInFace(1);
  e.addInFace(1);
  CHECK(e.inFaces.size() == 1);
  CHECK(pit.size() == 1);
  CHECK(pit.expire(3.9) == 0);
  CHECK(pit.expire(4.0) == 1);
  CHECK(pit.find("k") == nullptr);
}

TEST_CASE("consume and stragglers")
{
  Pit pit;
  auto& e = pit.create("k", 0.0);
  e.addInFace(0);
  e.addOutFace(1);
  e.addOutFace(2);
  auto taken = pit.consume("k", 2, 0.5);
  REQUIRE(taken);
  CHECK(taken->inFaces == std::vector<FaceId>{0});
  CHECK(pit.size() == 0);
  CHECK(pit.takeStraggler("k", 1, 0.6));
  CHECK_FALSE(pit.takeStraggler("k", 1, 0.7));
  CHECK_FALSE(pit.takeStraggler("k", 2, 0.7));
  CHECK_FALSE(pit.consume("k", 1, 0.8));
}

} // TEST_SUITE

TEST_SUITE("ccn.content-store")
{

TEST_CASE("never exceeds capacity and matches a reference LRU")
{
  // reference: list of keys, most recent first; every key costs 1
  SeededRandom rng(42);
  for (std::size_t capacity : {1, 3, 8}) {
    ContentStore cs(capacity);
    std::list<uint32_t> model;
    auto obj = makeObject(20, 4, 2);
    for (int step = 0; step < 4000; ++step) {
      uint32_t idx = 1 + static_cast<uint32_t>(rng.uniform() * 20);
      if (rng.uniform() < 0.5) {
        cs.insertPlain(obj->plainData(idx));
        model.remove(idx);
        model.push_front(idx);
        if (model.size() > capacity) {
          model.pop_back();
        }
      }
      else {
        bool hit = cs.findPlain(FILE_NAME, idx).has_value();
        bool modelHit = std::find(model.begin(), model.end(), idx) != model.end();
        REQUIRE(hit == modelHit);
        if (modelHit) {
          model.remove(idx);
          model.push_front(idx);
        }
      }
      REQUIRE(cs.used() <= capacity);
      std::vector<std::string> expected;
      for (auto i : model) {
        expected.push_back(FILE_NAME.withChunk(i).toUri());
      }
      REQUIRE(cs.keysByRecency() == expected);
    }
  }
}

TEST_CASE("coded entries cost their rank")
{
  ContentStore cs(3);
  auto obj = makeObject(4, 4, 2);
  const auto& gen = obj->generations().front();
  auto key = pitKey(nc3n::makeCodedData(FILE_NAME, rlnc::encodeSystematic(gen, 0)));
  cs.insertCoded(key, nc3n::makeCodedData(FILE_NAME, rlnc::encodeSystematic(gen, 0)));
  cs.insertCoded(key, nc3n::makeCodedData(FILE_NAME, rlnc::encodeSystematic(gen, 1)));
  CHECK(cs.used() == 2);
  cs.insertPlain(obj->plainData(4));
  CHECK(cs.used() == 3);
  // a third DoF pushes the total past 3, so the least recent entry (plain C4) goes
  cs.findCoded(key);
  cs.insertCoded(key, nc3n::makeCodedData(FILE_NAME, rlnc::encodeSystematic(gen, 2)));
  CHECK(cs.used() == 3);
  CHECK_FALSE(cs.findPlain(FILE_NAME, 4));
}

TEST_CASE("whole-object mode serves only complete objects")
{
  ContentStore cs(10, CacheMode::WholeObject);
  auto obj = makeObject(3);
  cs.insertPlain(obj->plainData(1));
  cs.insertPlain(obj->plainData(2));
  CHECK_FALSE(cs.findPlain(FILE_NAME, 1));
  cs.insertPlain(obj->plainData(3));
  auto hit = cs.findPlain(FILE_NAME, 2);
  REQUIRE(hit);
  CHECK(hit->payload == obj->chunk(2));
}

} // TEST_SUITE

TEST_SUITE("ccn.forwarder")
{

TEST_CASE("router without a route broadcasts to both neighbours")
{
  SeededRandom rng(1);
  Forwarder r(3, {}, rng);
  auto acts = r.onInterest(makeInterest(FILE_NAME, 11), 0, 0.0);
  auto* fwd = find<action::ForwardInterest>(acts);
  REQUIRE(fwd != nullptr);
  CHECK(fwd->broadcast);
  CHECK(fwd->faces == std::vector<FaceId>{1, 2});
  CHECK(r.pit().size() == 1);
}

TEST_CASE("second interest from another face is aggregated")
{
  SeededRandom rng(1);
  Forwarder r(3, {}, rng);
  r.fib().addNextHop(FILE_NAME, 2);
  CHECK(find<action::ForwardInterest>(r.onInterest(makeInterest(FILE_NAME.withChunk(1), 1), 0, 0.0)));
  auto acts = r.onInterest(makeInterest(FILE_NAME, 2), 1, 0.1);
  REQUIRE(acts.size() == 1);
  CHECK(std::holds_alternative<action::Aggregate>(acts[0]));
  CHECK(r.counters().aggregated == 1);
}

TEST_CASE("duplicate nonce is dropped before anything else")
{
  SeededRandom rng(1);
  Forwarder r(2, {}, rng);
  r.addProducer(makeObject(2));
  CHECK(find<action::ReplyFromStore>(r.onInterest(makeInterest(FILE_NAME, 5), 0, 0.0)));
  auto acts = r.onInterest(makeInterest(FILE_NAME, 5), 1, 0.0);
  REQUIRE(find<action::DropInterest>(acts));
  CHECK(find<action::DropInterest>(acts)->reason == action::DropReason::Duplicate);
}

TEST_CASE("cached chunk is answered without forwarding")
{
  SeededRandom rng(1);
  Forwarder r(2, {}, rng);
  r.fib().addNextHop(FILE_NAME, 1);
  auto obj = makeObject(2);
  r.onInterest(makeInterest(FILE_NAME, 1), 0, 0.0);
  r.onData(obj->plainData(1), 1, 0.1);
  auto acts = r.onInterest(makeInterest(FILE_NAME.withChunk(1), 2), 0, 0.2);
  REQUIRE(acts.size() == 1);
  auto* reply = find<action::ReplyFromStore>(acts);
  REQUIRE(reply != nullptr);
  CHECK(reply->data == obj->plainData(1));
}

TEST_CASE("two copies of a plain chunk: one forwarded, one discarded")
{
  SeededRandom rng(1);
  Forwarder r(3, {}, rng);
  auto obj = makeObject(2);
  r.onInterest(makeInterest(FILE_NAME, 1), 0, 0.0);
  auto first = r.onData(obj->plainData(1), 1, 0.1);
  auto* fwd = find<action::ForwardData>(first);
  REQUIRE(fwd != nullptr);
  CHECK(fwd->faces == std::vector<FaceId>{0});
  auto second = r.onData(obj->plainData(1), 2, 0.2);
  REQUIRE(find<action::DiscardData>(second));
  CHECK(find<action::DiscardData>(second)->reason == action::DiscardReason::Duplicate);
  CHECK_FALSE(find<action::ForwardData>(second));
  // the first responder's face was learned
  CHECK(*r.fib().longestPrefixMatch(FILE_NAME) == std::vector<FaceId>{1});
}

TEST_CASE("data with no pending interest is unsolicited")
{
  SeededRandom rng(1);
  Forwarder r(2, {}, rng);
  auto acts = r.onData(makeObject(1)->plainData(1), 1, 0.0);
  REQUIRE(find<action::DiscardData>(acts));
  CHECK(find<action::DiscardData>(acts)->reason == action::DiscardReason::Unsolicited);
  CHECK(r.counters().unsolicitedData == 1);
}

TEST_CASE("coded chunk goes to both waiting faces and is cached")
{
  SeededRandom rng(1);
  Forwarder r(3, {}, rng);
  r.fib().addNextHop(FILE_NAME, 2);
  auto obj = makeObject(2);
  const auto& gen = obj->generations().front();
  rlnc::Decoder empty(gen.id, gen.k(), gen.chunkSize);
  r.onInterest(nc3n::makeNcInterest(FILE_NAME, empty, 1), 0, 0.0);
  r.onInterest(nc3n::makeNcInterest(FILE_NAME, empty, 2), 1, 0.0);
  auto data = nc3n::makeCodedData(FILE_NAME, rlnc::combine(gen, std::vector<uint8_t>{1, 2}));
  auto acts = r.onData(data, 2, 0.1);
  auto* fwd = find<action::ForwardData>(acts);
  REQUIRE(fwd != nullptr);
  CHECK(fwd->faces == std::vector<FaceId>{0, 1});
  auto* cached = find<action::CacheInsert>(acts);
  REQUIRE(cached != nullptr);
  CHECK(cached->effect == nc3n::CacheEffect::StoredInnovative);
}

TEST_CASE("nc interest at a node with coding disabled is forwarded, never answered coded")
{
  SeededRandom rng(1);
  ForwarderConfig cfg;
  cfg.ncEnabled = false;
  Forwarder r(2, cfg, rng);
  auto obj = makeObject(2);
  r.addProducer(obj);
  const auto& gen = obj->generations().front();
  rlnc::Decoder empty(gen.id, gen.k(), gen.chunkSize);
  auto acts = r.onInterest(nc3n::makeNcInterest(FILE_NAME, empty, 1), 0, 0.0);
  CHECK_FALSE(find<action::ReplyFromStore>(acts));
}

TEST_CASE("plain interests never yield coded data")
{
  SeededRandom rng(3);
  Forwarder repo(1, {}, rng);
  auto obj = makeObject(6, 3);
  repo.addProducer(obj);
  for (uint32_t i = 1; i <= 6; ++i) {
    auto acts = repo.onInterest(makeInterest(FILE_NAME.withChunk(i), i), 0, 0.0);
    auto* reply = find<action::ReplyFromStore>(acts);
    REQUIRE(reply != nullptr);
    CHECK_FALSE(reply->data.isCoded());
    CHECK(reply->data.payload == obj->chunk(i));
  }
}

TEST_CASE("reverse path on a four-node line")
{
  // consumer - A - B - repo; faces: 0 toward consumer, 1 toward repo
  SeededRandom rng(9);
  Forwarder a(2, {}, rng), b(2, {}, rng), repo(1, {}, rng);
  a.fib().addNextHop(FILE_NAME, 1);
  b.fib().addNextHop(FILE_NAME, 1);
  auto obj = makeObject(2);
  repo.addProducer(obj);

  auto i = makeInterest(FILE_NAME.withChunk(2), 77);
  auto atA = a.onInterest(i, 0, 0.0);
  auto fa = find<action::ForwardInterest>(atA);
  REQUIRE(fa);
  CHECK(fa->faces == std::vector<FaceId>{1});
  auto atB = b.onInterest(fa->interest, 0, 0.1);
  auto fb = find<action::ForwardInterest>(atB);
  REQUIRE(fb);
  auto atRepo = repo.onInterest(fb->interest, 0, 0.2);
  auto rr = find<action::ReplyFromStore>(atRepo);
  REQUIRE(rr);
  auto backB = b.onData(rr->data, 1, 0.3);
  auto db = find<action::ForwardData>(backB);
  REQUIRE(db);
  CHECK(db->faces == std::vector<FaceId>{0});
  auto backA = a.onData(db->data, 1, 0.4);
  auto da = find<action::ForwardData>(backA);
  REQUIRE(da);
  CHECK(da->faces == std::vector<FaceId>{0});
  CHECK(da->data.payload == obj->chunk(2));
  CHECK(a.pit().size() == 0);
  CHECK(b.pit().size() == 0);
}

} // TEST_SUITE
