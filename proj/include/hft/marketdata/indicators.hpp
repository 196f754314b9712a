#pragma once

#include "hft/marketdata/lob.hpp"
#include "hft/types.hpp"

namespace hft {

// (sum ask_qty - sum bid_qty) / (sum ask_qty + sum bid_qty) over the first
// `levels` levels. Range [-1, 1]; -1 means all resting size is on the bid.
double imbalance(const LobSnapshot& lob, int levels);

// Exponential moving average, smoothing 2/(span+1), seeded with x[0].
Vec ema(const VecRef& x, int span);

struct MacdResult {
  Vec dif;   // ema(x, span_mid) - ema(x, span_long)
  Vec dea;   // ema(dif, span_short)
  Vec macd;  // dif - dea
};

MacdResult macd(const VecRef& prices, int span_short, int span_mid, int span_long);

}  // namespace hft
