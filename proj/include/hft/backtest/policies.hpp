#pragma once

#include "hft/marketdata/lob.hpp"
#include "hft/pool/agent_pool.hpp"

#include <memory>

namespace hft {

// Rule policy on (MACD, DIF): both above the band -> full position, both
// below -> flat, otherwise hold.
std::shared_ptr<LowPolicy> macd_strategy(const MarketSeries& series, int span_short,
                                         int span_mid, int span_long, int n_actions,
                                         double band = 0.0);

// Imbalance rule: below `lower` (bid pressure) -> full position, above
// `upper` (ask pressure) -> flat, otherwise hold.
std::shared_ptr<LowPolicy> iv_strategy(const MarketSeries& series, int levels, double lower,
                                       double upper, int n_actions);

std::shared_ptr<LowPolicy> buy_and_hold(int n_actions);
std::shared_ptr<LowPolicy> always_flat();

}  // namespace hft
