#pragma once

#include "hft/marketdata/lob.hpp"
#include "hft/types.hpp"

#include <vector>

namespace hft {

struct Chunk {
  Index begin = 0;  // second index into the source series
  Index end = 0;
  double ret = 0.0;  // buy-and-hold return of the chunk mid
  int id = 0;
};

// Contiguous non-overlapping chunks of exactly chunk_len seconds; a trailing
// partial chunk is dropped.
std::vector<Chunk> chunk_dataset(const MarketSeries& series, Index chunk_len);

}  // namespace hft
