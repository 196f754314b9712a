#include "hft/marketdata/indicators.hpp"

namespace hft {

double imbalance(const LobSnapshot& lob, int levels) {
  if (levels < 1) throw ConfigError("imbalance: levels must be >= 1");
  if (levels > static_cast<int>(lob.bids.size()) ||
      levels > static_cast<int>(lob.asks.size())) {
    throw DataError("imbalance: requested more levels than the book carries");
  }
  double ask_sz = 0.0, bid_sz = 0.0;
  for (int i = 0; i < levels; ++i) {
    ask_sz += lob.asks[i].qty;
    bid_sz += lob.bids[i].qty;
  }
  const double total = ask_sz + bid_sz;
  if (total <= 0.0) throw DataError("empty book window");
  return (ask_sz - bid_sz) / total;
}

Vec ema(const VecRef& x, int span) {
  if (x.size() == 0) throw DataError("ema: empty input");
  if (span < 1) throw ConfigError("ema: span must be >= 1");
  const double k = 2.0 / (span + 1.0);
  Vec out(x.size());
  out[0] = x[0];
  for (Index i = 1; i < x.size(); ++i) {
    out[i] = out[i - 1] + k * (x[i] - out[i - 1]);
  }
  return out;
}

MacdResult macd(const VecRef& prices, int span_short, int span_mid, int span_long) {
  if (prices.size() == 0) throw DataError("macd: empty input");
  if (!(span_short < span_mid && span_mid < span_long)) {
    throw ConfigError("macd: spans must satisfy short < mid < long");
  }
  MacdResult r;
  r.dif = ema(prices, span_mid) - ema(prices, span_long);
  r.dea = ema(r.dif, span_short);
  r.macd = r.dif - r.dea;
  return r;
}

}  // namespace hft
