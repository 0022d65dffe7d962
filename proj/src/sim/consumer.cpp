#include "nccn/sim/consumer.hpp"
#include "nccn/nc3n/nc3n.hpp"

#include <algorithm>
#include <cmath>

namespace nccn::sim {

ObjectManifest
ObjectManifest::of(const ccn::ContentObject& object)
{
  ObjectManifest m;
  m.prefix = object.prefix();
  m.chunkCount = object.chunkCount();
  m.chunkSize = object.chunkSize();
  m.size = object.size();
  for (const auto& g : object.generations()) {
    m.generations.push_back({g.id, g.k(), ccn::firstChunkOf(g.id) + 1});
  }
  return m;
}

Consumer::Consumer(Harness& h, NodeIndex self, ConsumerConfig config)
  : App(h, self)
  , m_config(std::move(config))
  , m_rtt(faceCount())
{
  for (const auto& g : m_config.manifest.generations) {
    m_decoders.emplace_back(g.id, g.k, m_config.manifest.chunkSize);
  }
}

double
Consumer::rto(std::size_t face) const
{
  const auto& e = m_rtt[face];
  return e.sampled ? 2 * (e.srtt + 4 * e.rttvar) : 2 * m_config.initialRtt;
}

void
Consumer::start()
{
  if (m_config.mode == RequestMode::Passive) {
    return;
  }
  after(m_config.startTime, [this] {
    if (m_config.mode == RequestMode::Round) {
      startRound();
    }
    else {
      fill();
    }
  });
}

std::size_t
Consumer::generationOf(uint32_t chunk) const
{
  const auto& gens = m_config.manifest.generations;
  for (std::size_t g = gens.size(); g-- > 0;) {
    if (chunk >= gens[g].firstChunk) {
      return g;
    }
  }
  throw std::out_of_range("chunk outside the manifest");
}

bool
Consumer::have(uint32_t chunk) const
{
  auto g = generationOf(chunk);
  return m_decoders[g].recovered(chunk - m_config.manifest.generations[g].firstChunk).has_value();
}

std::optional<std::size_t>
Consumer::nextCodedGeneration(bool respectOutstanding) const
{
  for (std::size_t g = 0; g < m_decoders.size(); ++g) {
    const auto& d = m_decoders[g];
    if (d.isComplete()) {
      continue;
    }
    if (!respectOutstanding || d.rank() + openFor(g) < d.k()) {
      return g;
    }
  }
  return std::nullopt;
}

std::optional<uint32_t>
Consumer::nextMissingChunk(bool skipRequested) const
{
  for (uint32_t c = 1; c <= m_config.manifest.chunkCount; ++c) {
    if (!have(c) && !(skipRequested && m_inFlightChunks.count(c) != 0)) {
      return c;
    }
  }
  return std::nullopt;
}

std::size_t
Consumer::openOn(std::size_t face) const
{
  return static_cast<std::size_t>(std::count_if(m_requests.begin(), m_requests.end(), [face](const auto& r) {
    return r.second.open && r.second.face == face;
  }));
}

std::size_t
Consumer::openFor(std::size_t gen) const
{
  return static_cast<std::size_t>(std::count_if(m_requests.begin(), m_requests.end(), [gen](const auto& r) {
    return r.second.open && r.second.coded && r.second.gen == gen;
  }));
}

void
Consumer::issue(std::size_t face, bool coded, std::size_t gen, uint32_t chunk)
{
  auto id = m_nextId++;
  m_requests.emplace(id, Request{face, coded, gen, chunk, now(), 0, true});
  transmit(id);
}

void
Consumer::transmit(uint64_t id)
{
  auto& r = m_requests.at(id);
  r.sentAt = now();
  uint64_t nonce = rng().next();
  ccn::Interest interest;
  if (r.coded) {
    interest = nc3n::makeNcInterest(m_config.manifest.prefix, m_decoders[r.gen], nonce);
  }
  else {
    interest = ccn::makeInterest(m_config.manifest.prefix.withChunk(r.chunk), nonce);
  }
  ++m_stats.interests;
  send(r.face, std::move(interest));
  auto attempt = r.retries;
  after(rto(r.face), [this, id, attempt] { onTimeout(id, attempt); });
}

void
Consumer::onTimeout(uint64_t id, unsigned attempt)
{
  auto it = m_requests.find(id);
  if (it == m_requests.end() || !it->second.open || it->second.retries != attempt) {
    return;
  }
  auto& r = it->second;
  bool stillNeeded = r.coded ? !m_decoders[r.gen].isComplete() : !have(r.chunk);
  if (!stillNeeded || r.retries >= m_config.maxRetries || complete()) {
    resolve(id);
    return;
  }
  ++r.retries;
  ++m_stats.retransmissions;
  transmit(id);
}

void
Consumer::resolve(uint64_t id)
{
  auto& r = m_requests.at(id);
  if (!r.open) {
    return;
  }
  r.open = false;
  if (m_config.mode == RequestMode::Round) {
    if (--m_roundOpen == 0) {
      startRound();
    }
  }
  else {
    fill();
  }
}

void
Consumer::startRound()
{
  if (complete() || (m_config.rounds != 0 && m_round >= m_config.rounds)) {
    return;
  }
  std::optional<std::size_t> gen;
  std::optional<uint32_t> chunk;
  if (m_config.nc) {
    gen = nextCodedGeneration(false);
  }
  else {
    chunk = nextMissingChunk(false);
  }
  if (!gen && !chunk) {
    return;
  }
  ++m_round;
  m_roundOpen = faceCount();
  for (std::size_t f = 0; f < faceCount(); ++f) {
    issue(f, m_config.nc, gen.value_or(0), chunk.value_or(0));
  }
}

void
Consumer::fill()
{
  if (complete() || m_config.mode != RequestMode::Pipeline) {
    return;
  }
  if (m_config.nc) {
    for (bool progress = true; progress;) {
      progress = false;
      for (std::size_t f = 0; f < faceCount(); ++f) {
        if (openOn(f) >= m_config.window) {
          continue;
        }
        // once every missing DoF is asked for, keep the face busy on the
        // oldest incomplete generation; a surplus answer is cheaper than an idle link
        auto g = nextCodedGeneration(true);
        if (!g) {
          g = nextCodedGeneration(false);
        }
        if (g) {
          issue(f, true, *g, 0);
          progress = true;
        }
      }
    }
    return;
  }
  while (m_inFlightChunks.size() < m_config.window) {
    auto c = nextMissingChunk(true);
    if (!c) {
      break;
    }
    m_inFlightChunks.insert(*c);
    for (std::size_t f = 0; f < faceCount(); ++f) {
      issue(f, false, 0, *c);
    }
  }
}

void
Consumer::receive(std::size_t face, const Envelope& envelope)
{
  const auto* data = std::get_if<ccn::DataPacket>(&envelope.frame);
  if (data == nullptr) {
    return; // consumers do not serve Interests
  }
  ++m_stats.received;

  std::size_t gen = 0;
  rlnc::CodedChunk chunk;
  std::optional<uint32_t> plainIndex;
  if (const auto* info = data->coding()) {
    auto it = std::find_if(m_config.manifest.generations.begin(), m_config.manifest.generations.end(),
                           [&](const auto& g) { return g.id == info->generation; });
    if (it == m_config.manifest.generations.end()) {
      ++m_stats.wasted;
      return;
    }
    gen = static_cast<std::size_t>(it - m_config.manifest.generations.begin());
    chunk = nc3n::toCodedChunk(*data);
  }
  else {
    plainIndex = data->plain()->chunkIndex;
    gen = generationOf(*plainIndex);
    const auto& g = m_config.manifest.generations[gen];
    chunk = rlnc::CodedChunk{g.id, rlnc::CodingVector(g.k, 0), data->payload};
    chunk.vector[*plainIndex - g.firstChunk] = 1;
    chunk.payload.resize(m_config.manifest.chunkSize, 0);
  }

  // match the oldest open request this arrival answers
  std::optional<uint64_t> matched;
  for (auto& [id, r] : m_requests) {
    if (r.open && r.face == face &&
        (plainIndex ? (!r.coded && r.chunk == *plainIndex) : (r.coded && r.gen == gen))) {
      matched = id;
      break;
    }
  }
  if (matched) {
    const auto& r = m_requests.at(*matched);
    if (r.retries == 0) {
      double sample = now() - r.sentAt;
      auto& e = m_rtt[face];
      if (e.sampled) {
        e.rttvar = 0.75 * e.rttvar + 0.25 * std::abs(e.srtt - sample);
        e.srtt = 0.875 * e.srtt + 0.125 * sample;
      }
      else {
        e.srtt = sample;
        e.rttvar = sample / 2;
        e.sampled = true;
      }
    }
  }

  bool useful = m_decoders[gen].add(chunk) == rlnc::AddResult::Innovative;
  if (useful) {
    ++m_stats.innovative;
    if (matched) {
      m_stats.retrievalTimes.push_back(now() - m_requests.at(*matched).sentAt);
    }
  }
  else {
    ++m_stats.wasted;
  }
  if (plainIndex) {
    m_inFlightChunks.erase(*plainIndex);
  }
  for (auto it = m_inFlightChunks.begin(); it != m_inFlightChunks.end();) {
    it = have(*it) ? m_inFlightChunks.erase(it) : std::next(it);
  }

  if (!complete() && std::all_of(m_decoders.begin(), m_decoders.end(), [](const auto& d) { return d.isComplete(); })) {
    m_completion = now();
  }
  if (matched) {
    resolve(*matched);
  }
  else if (m_config.mode == RequestMode::Pipeline) {
    fill();
  }
}

Bytes
Consumer::object() const
{
  std::vector<Bytes> chunks;
  for (const auto& d : m_decoders) {
    for (auto& c : d.decode()) {
      chunks.push_back(std::move(c));
    }
  }
  Bytes out;
  for (auto& c : chunks) {
    out.insert(out.end(), c.begin(), c.end());
  }
  out.resize(std::min(out.size(), m_config.manifest.size));
  return out;
}

void
Consumer::report(Metrics& m) const
{
  auto& c = m.consumers[name()];
  c.received = m_stats.received;
  c.innovative = m_stats.innovative;
  c.wasted = m_stats.wasted;
  c.interests = m_stats.interests;
  c.retransmissions = m_stats.retransmissions;
  c.retrievalTimes = m_stats.retrievalTimes;
  c.completion = m_completion;
  c.recovered.clear();
  for (uint32_t i = 1; i <= m_config.manifest.chunkCount; ++i) {
    if (have(i)) {
      c.recovered.push_back(i);
    }
  }
}

} // namespace nccn::sim
