#ifndef NCCN_NC3N_CODING_WINDOW_HPP
#define NCCN_NC3N_CODING_WINDOW_HPP

#include "nccn/rlnc.hpp"

namespace nccn::nc3n {

/** \brief Partitions an ordered chunk stream into consecutive generations of
 *         \p k chunks; the last may hold fewer.
 *
 *  Generation ids are \p idBase plus the 0-based index of the generation's
 *  first chunk, so the chunk range of a generation is recoverable from its id.
 *  Chunks are padded to \p chunkSize (0: longest chunk in the window).
 *  \throw std::domain_error when k < 1
 */
std::vector<rlnc::Generation>
codingWindow(std::span<const Bytes> chunks, std::size_t k, uint64_t idBase = 0,
             std::size_t chunkSize = 0);

} // namespace nccn::nc3n

#endif
