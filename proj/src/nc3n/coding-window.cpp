#include "nccn/nc3n/coding-window.hpp"

namespace nccn::nc3n {

std::vector<rlnc::Generation>
codingWindow(std::span<const Bytes> chunks, std::size_t k, uint64_t idBase, std::size_t chunkSize)
{
  if (k < 1) {
    throw std::domain_error("coding window needs k >= 1");
  }
  std::vector<rlnc::Generation> out;
  for (std::size_t first = 0; first < chunks.size(); first += k) {
    auto last = std::min(chunks.size(), first + k);
    std::vector<Bytes> window(chunks.begin() + first, chunks.begin() + last);
    out.push_back(rlnc::Generation::fromChunks(rlnc::GenerationId{idBase + first}, std::move(window),
                                               chunkSize));
  }
  return out;
}

} // namespace nccn::nc3n
