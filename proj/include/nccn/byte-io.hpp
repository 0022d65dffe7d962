#ifndef NCCN_BYTE_IO_HPP
#define NCCN_BYTE_IO_HPP

#include "nccn/common.hpp"

namespace nccn {

/** \brief Appends big-endian integers and raw bytes to a buffer.
 */
class ByteWriter
{
public:
  ByteWriter&
  u8(uint8_t v)
  {
    m_buf.push_back(v);
    return *this;
  }

  ByteWriter&
  u16(uint16_t v)
  {
    return be(v, 2);
  }

  ByteWriter&
  u32(uint32_t v)
  {
    return be(v, 4);
  }

  ByteWriter&
  u64(uint64_t v)
  {
    return be(v, 8);
  }

  ByteWriter&
  raw(std::span<const uint8_t> bytes)
  {
    m_buf.insert(m_buf.end(), bytes.begin(), bytes.end());
    return *this;
  }

  Bytes
  take()
  {
    return std::move(m_buf);
  }

private:
  ByteWriter&
  be(uint64_t v, int width)
  {
    for (int i = width - 1; i >= 0; --i) {
      m_buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    return *this;
  }

  Bytes m_buf;
};

/** \brief Bounds-checked big-endian reader; throws ParseError on truncation.
 */
class ByteReader
{
public:
  explicit
  ByteReader(std::span<const uint8_t> buf)
    : m_buf(buf)
  {
  }

  uint8_t
  u8()
  {
    return static_cast<uint8_t>(be(1));
  }

  uint16_t
  u16()
  {
    return static_cast<uint16_t>(be(2));
  }

  uint32_t
  u32()
  {
    return static_cast<uint32_t>(be(4));
  }

  uint64_t
  u64()
  {
    return be(8);
  }

  Bytes
  raw(std::size_t n)
  {
    need(n);
    Bytes out(m_buf.begin() + m_pos, m_buf.begin() + m_pos + n);
    m_pos += n;
    return out;
  }

  std::size_t
  remaining() const
  {
    return m_buf.size() - m_pos;
  }

  void
  expectEnd() const
  {
    if (remaining() != 0) {
      throw ParseError("trailing bytes: " + std::to_string(remaining()));
    }
  }

private:
  void
  need(std::size_t n) const
  {
    if (remaining() < n) {
      throw ParseError("truncated input: need " + std::to_string(n) + " bytes at offset " +
                       std::to_string(m_pos) + ", have " + std::to_string(remaining()));
    }
  }

  uint64_t
  be(int width)
  {
    need(static_cast<std::size_t>(width));
    uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v = (v << 8) | m_buf[m_pos++];
    }
    return v;
  }

  std::span<const uint8_t> m_buf;
  std::size_t m_pos = 0;
};

} // namespace nccn

#endif // NCCN_BYTE_IO_HPP
