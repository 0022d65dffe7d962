#include "nccn/rlnc.hpp"
#include "nccn/byte-io.hpp"

#include <algorithm>

namespace nccn::rlnc {

namespace {

bool
isZero(std::span<const uint8_t> v)
{
  return std::all_of(v.begin(), v.end(), [] (uint8_t x) { return x == 0; });
}

} // namespace

Generation
Generation::fromChunks(GenerationId id, std::vector<Bytes> chunks, std::size_t chunkSize)
{
  if (chunks.empty()) {
    throw std::domain_error("generation must hold at least one chunk");
  }
  if (chunkSize == 0) {
    for (const auto& c : chunks) {
      chunkSize = std::max(chunkSize, c.size());
    }
  }
  Generation gen;
  gen.id = id;
  gen.chunkSize = chunkSize;
  for (auto& c : chunks) {
    if (c.size() > chunkSize) {
      throw std::domain_error("chunk longer than chunk size");
    }
    gen.lengths.push_back(c.size());
    c.resize(chunkSize, 0);
    gen.chunks.push_back(std::move(c));
  }
  return gen;
}

Generation
Generation::fromBytes(GenerationId id, std::span<const uint8_t> data, std::size_t chunkSize)
{
  if (chunkSize == 0) {
    throw std::domain_error("chunk size must be positive");
  }
  std::vector<Bytes> chunks;
  for (std::size_t off = 0; off < data.size(); off += chunkSize) {
    auto n = std::min(chunkSize, data.size() - off);
    chunks.emplace_back(data.begin() + off, data.begin() + off + n);
  }
  return fromChunks(id, std::move(chunks), chunkSize);
}

Bytes
Generation::original(std::size_t i) const
{
  return Bytes(chunks.at(i).begin(), chunks.at(i).begin() + lengths.at(i));
}

CodedChunk
combine(const Generation& gen, std::span<const gf256::Element> coefficients)
{
  if (gen.k() == 0) {
    throw std::domain_error("empty generation");
  }
  if (coefficients.size() != gen.k()) {
    throw std::domain_error("coefficient count differs from generation size");
  }
  CodedChunk out{gen.id, CodingVector(coefficients.begin(), coefficients.end()),
                 Bytes(gen.chunkSize, 0)};
  for (std::size_t i = 0; i < gen.k(); ++i) {
    gf256::addScaled(out.payload, gen.chunks[i], coefficients[i]);
  }
  return out;
}

CodingVector
drawVector(std::size_t k, RandomSource& rng)
{
  CodingVector v(k);
  do {
    for (auto& c : v) {
      c = rng.byte();
    }
  } while (isZero(v));
  return v;
}

CodedChunk
encodeRandom(const Generation& gen, RandomSource& rng)
{
  if (gen.k() == 0) {
    throw std::domain_error("empty generation");
  }
  return combine(gen, drawVector(gen.k(), rng));
}

CodedChunk
encodeSystematic(const Generation& gen, std::size_t index)
{
  if (index >= gen.k()) {
    throw std::domain_error("systematic index " + std::to_string(index) +
                            " out of range for k=" + std::to_string(gen.k()));
  }
  CodingVector v(gen.k(), 0);
  v[index] = 1;
  return CodedChunk{gen.id, std::move(v), gen.chunks[index]};
}

namespace {

void
checkHeld(std::span<const CodedChunk> held)
{
  if (held.empty()) {
    throw std::domain_error("recode needs at least one held chunk");
  }
  for (const auto& c : held) {
    if (c.generation != held.front().generation) {
      throw std::domain_error("recode across different generations");
    }
    if (c.vector.size() != held.front().vector.size() ||
        c.payload.size() != held.front().payload.size()) {
      throw std::domain_error("recode over chunks of different shape");
    }
  }
}

} // namespace

CodedChunk
recodeWith(std::span<const CodedChunk> held, std::span<const gf256::Element> scalars)
{
  checkHeld(held);
  if (scalars.size() != held.size()) {
    throw std::domain_error("one scalar per held chunk required");
  }
  const auto& first = held.front();
  CodedChunk out{first.generation, CodingVector(first.vector.size(), 0),
                 Bytes(first.payload.size(), 0)};
  for (std::size_t j = 0; j < held.size(); ++j) {
    gf256::addScaled(out.vector, held[j].vector, scalars[j]);
    gf256::addScaled(out.payload, held[j].payload, scalars[j]);
  }
  return out;
}

CodedChunk
recode(std::span<const CodedChunk> held, RandomSource& rng)
{
  checkHeld(held);
  if (std::all_of(held.begin(), held.end(), [] (const CodedChunk& c) { return isZero(c.vector); })) {
    throw std::domain_error("held chunks span nothing");
  }
  while (true) {
    auto scalars = drawVector(held.size(), rng);
    auto out = recodeWith(held, scalars);
    if (!isZero(out.vector)) {
      return out;
    }
  }
}

InsufficientDof::InsufficientDof(std::size_t rank, std::size_t k)
  : std::runtime_error("insufficient degrees of freedom: rank " + std::to_string(rank) +
                       " of " + std::to_string(k))
  , m_rank(rank)
  , m_k(k)
{
}

Decoder::Decoder(GenerationId gen, std::size_t k, std::size_t chunkSize)
  : m_gen(gen)
  , m_k(k)
  , m_chunkSize(chunkSize)
{
  if (k == 0) {
    throw std::domain_error("decoder needs k >= 1");
  }
}

void
Decoder::reduce(CodingVector& vector, Bytes* payload) const
{
  for (const auto& row : m_rows) {
    auto c = vector[row.pivot];
    if (c != 0) {
      gf256::addScaled(vector, row.vector, c);
      if (payload != nullptr) {
        gf256::addScaled(*payload, row.payload, c);
      }
    }
  }
}

AddResult
Decoder::add(const CodedChunk& chunk)
{
  if (chunk.generation != m_gen) {
    throw std::domain_error("chunk belongs to generation " + std::to_string(chunk.generation.value) +
                            ", decoder holds " + std::to_string(m_gen.value));
  }
  if (chunk.vector.size() != m_k) {
    throw std::domain_error("coding vector length differs from k");
  }
  if (chunk.payload.size() != m_chunkSize) {
    throw std::domain_error("payload length differs from chunk size");
  }
  return insert(chunk.vector, chunk.payload);
}

AddResult
Decoder::addVector(std::span<const gf256::Element> vector)
{
  if (vector.size() != m_k) {
    throw std::domain_error("coding vector length differs from k");
  }
  return insert(CodingVector(vector.begin(), vector.end()), Bytes(m_chunkSize, 0));
}

AddResult
Decoder::insert(CodingVector vector, Bytes payload)
{
  reduce(vector, &payload);
  auto lead = std::find_if(vector.begin(), vector.end(), [] (uint8_t x) { return x != 0; });
  if (lead == vector.end()) {
    return AddResult::Redundant;
  }
  auto pivot = static_cast<std::size_t>(lead - vector.begin());
  auto norm = gf256::inv(*lead);
  gf256::scale(vector, norm);
  gf256::scale(payload, norm);

  // back-substitute so the new pivot column is zero everywhere else
  for (auto& row : m_rows) {
    auto c = row.vector[pivot];
    if (c != 0) {
      gf256::addScaled(row.vector, vector, c);
      gf256::addScaled(row.payload, payload, c);
    }
  }
  auto pos = std::find_if(m_rows.begin(), m_rows.end(), [pivot] (const Row& r) { return r.pivot > pivot; });
  m_rows.insert(pos, Row{pivot, std::move(vector), std::move(payload)});
  return AddResult::Innovative;
}

bool
Decoder::isInnovative(std::span<const gf256::Element> vector) const
{
  if (vector.size() != m_k) {
    throw std::domain_error("coding vector length differs from k");
  }
  CodingVector v(vector.begin(), vector.end());
  reduce(v, nullptr);
  return !isZero(v);
}

std::vector<Bytes>
Decoder::decode() const
{
  if (!isComplete()) {
    throw InsufficientDof(rank(), m_k);
  }
  // full rank in RREF is the identity, so payloads are the sources in order
  std::vector<Bytes> out;
  out.reserve(m_k);
  for (const auto& row : m_rows) {
    out.push_back(row.payload);
  }
  return out;
}

std::optional<Bytes>
Decoder::recovered(std::size_t index) const
{
  for (const auto& row : m_rows) {
    if (row.pivot != index) {
      continue;
    }
    for (std::size_t j = 0; j < m_k; ++j) {
      if (j != index && row.vector[j] != 0) {
        return std::nullopt;
      }
    }
    return row.payload;
  }
  return std::nullopt;
}

std::vector<CodingVector>
Decoder::basis() const
{
  std::vector<CodingVector> out;
  out.reserve(m_rows.size());
  for (const auto& row : m_rows) {
    out.push_back(row.vector);
  }
  return out;
}

std::vector<CodedChunk>
Decoder::rows() const
{
  std::vector<CodedChunk> out;
  out.reserve(m_rows.size());
  for (const auto& row : m_rows) {
    out.push_back(CodedChunk{m_gen, row.vector, row.payload});
  }
  return out;
}

Bytes
encodeWire(const CodedChunk& chunk)
{
  if (chunk.vector.size() > 0xFFFF) {
    throw std::domain_error("k does not fit the wire format");
  }
  ByteWriter w;
  w.u64(chunk.generation.value)
   .u16(static_cast<uint16_t>(chunk.vector.size()))
   .u32(static_cast<uint32_t>(chunk.payload.size()))
   .raw(chunk.vector)
   .raw(chunk.payload);
  return w.take();
}

CodedChunk
decodeWire(std::span<const uint8_t> wire)
{
  ByteReader r(wire);
  CodedChunk c;
  c.generation.value = r.u64();
  auto k = r.u16();
  auto size = r.u32();
  c.vector = r.raw(k);
  c.payload = r.raw(size);
  r.expectEnd();
  return c;
}

} // namespace nccn::rlnc
