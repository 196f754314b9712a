#include "hft/pool/chunks.hpp"

namespace hft {

std::vector<Chunk> chunk_dataset(const MarketSeries& series, Index chunk_len) {
  if (chunk_len <= 1) throw ConfigError("chunk length must be > 1");
  if (series.n() < chunk_len) throw ConfigError("series shorter than one chunk");
  std::vector<Chunk> out;
  int id = 0;
  for (Index b = 0; b + chunk_len <= series.n(); b += chunk_len) {
    Chunk c;
    c.begin = b;
    c.end = b + chunk_len;
    c.id = id++;
    const double first = series.mid(c.begin);
    const double last = series.mid(c.end - 1);
    c.ret = last / first - 1.0;
    out.push_back(c);
  }
  return out;
}

}  // namespace hft
