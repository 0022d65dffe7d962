#ifndef NCCN_RLNC_HPP
#define NCCN_RLNC_HPP

#include "nccn/common.hpp"
#include "nccn/gf256.hpp"

#include <compare>
#include <optional>

/** \brief Generation-based random linear network coding over GF(2^8).
 */
namespace nccn::rlnc {

struct GenerationId
{
  uint64_t value = 0;

  friend auto
  operator<=>(const GenerationId&, const GenerationId&) = default;
};

using CodingVector = std::vector<gf256::Element>;

/** \brief k source chunks coded together.
 *
 *  Every chunk is exactly chunkSize bytes; shorter originals are zero-padded
 *  and their true lengths are kept in \c lengths.
 */
struct Generation
{
  GenerationId id;
  std::size_t chunkSize = 0;
  std::vector<Bytes> chunks;
  std::vector<std::size_t> lengths;

  std::size_t
  k() const
  {
    return chunks.size();
  }

  /// Pads each chunk to \p chunkSize, or to the longest chunk when chunkSize is 0.
  /// \throw std::domain_error on an empty list or a chunk longer than chunkSize
  static Generation
  fromChunks(GenerationId id, std::vector<Bytes> chunks, std::size_t chunkSize = 0);

  /// Splits \p data into chunkSize pieces; the last one is padded.
  static Generation
  fromBytes(GenerationId id, std::span<const uint8_t> data, std::size_t chunkSize);

  /// chunk \p i with padding stripped
  Bytes
  original(std::size_t i) const;
};

struct CodedChunk
{
  GenerationId generation;
  CodingVector vector;
  Bytes payload;

  friend bool
  operator==(const CodedChunk&, const CodedChunk&) = default;
};

/// Linear combination of the generation's sources with the given coefficients.
CodedChunk
combine(const Generation& gen, std::span<const gf256::Element> coefficients);

/// k uniform coefficients; an all-zero draw is discarded and redrawn whole.
CodingVector
drawVector(std::size_t k, RandomSource& rng);

CodedChunk
encodeRandom(const Generation& gen, RandomSource& rng);

/// Unit vector e_index with the source chunk as payload.
CodedChunk
encodeSystematic(const Generation& gen, std::size_t index);

/// Combination of already coded chunks with explicit scalars.
CodedChunk
recodeWith(std::span<const CodedChunk> held, std::span<const gf256::Element> scalars);

/// Random combination of held chunks; never returns an all-zero vector.
CodedChunk
recode(std::span<const CodedChunk> held, RandomSource& rng);

enum class AddResult {
  Innovative,
  Redundant,
};

/** \brief Raised by Decoder::decode when the rank is below k.
 */
class InsufficientDof : public std::runtime_error
{
public:
  InsufficientDof(std::size_t rank, std::size_t k);

  std::size_t
  rank() const
  {
    return m_rank;
  }

  std::size_t
  k() const
  {
    return m_k;
  }

private:
  std::size_t m_rank;
  std::size_t m_k;
};

/** \brief Incremental Gaussian-elimination decoder.
 *
 *  Rows are kept in reduced row echelon form at all times: every row has a
 *  leading 1 in its pivot column and every pivot column is zero in all other
 *  rows. Payloads are transformed in lockstep with their coding vectors.
 *  A decoder built with chunkSize 0 tracks coding vectors only.
 */
class Decoder
{
public:
  Decoder(GenerationId gen, std::size_t k, std::size_t chunkSize);

  /// \throw std::domain_error on generation, vector length or payload length mismatch
  AddResult
  add(const CodedChunk& chunk);

  /// Adds a bare coding vector (payload treated as all zeros).
  AddResult
  addVector(std::span<const gf256::Element> vector);

  /// Pure span-membership test, no mutation.
  bool
  isInnovative(std::span<const gf256::Element> vector) const;

  /// \throw InsufficientDof when rank() < k()
  std::vector<Bytes>
  decode() const;

  /// Source chunk \p index if it is already individually recoverable.
  std::optional<Bytes>
  recovered(std::size_t index) const;

  /// Basis rows in pivot order.
  std::vector<CodingVector>
  basis() const;

  /// Basis rows with their payloads, usable as input to recode().
  std::vector<CodedChunk>
  rows() const;

  GenerationId
  generation() const
  {
    return m_gen;
  }

  std::size_t
  k() const
  {
    return m_k;
  }

  std::size_t
  chunkSize() const
  {
    return m_chunkSize;
  }

  std::size_t
  rank() const
  {
    return m_rows.size();
  }

  bool
  isComplete() const
  {
    return m_rows.size() == m_k;
  }

private:
  struct Row
  {
    std::size_t pivot;
    CodingVector vector;
    Bytes payload;
  };

  /// Eliminates all existing pivots from the vector (and payload).
  void
  reduce(CodingVector& vector, Bytes* payload) const;

  AddResult
  insert(CodingVector vector, Bytes payload);

private:
  GenerationId m_gen;
  std::size_t m_k;
  std::size_t m_chunkSize;
  std::vector<Row> m_rows; // sorted by pivot
};

/** Wire layout: gen_id u64 | k u16 | chunk_size u32 | k coefficients | payload.
 *  All integers big-endian.
 */
Bytes
encodeWire(const CodedChunk& chunk);

/// \throw ParseError
CodedChunk
decodeWire(std::span<const uint8_t> wire);

} // namespace nccn::rlnc

#endif // NCCN_RLNC_HPP
