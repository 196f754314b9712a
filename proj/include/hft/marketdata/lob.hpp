#pragma once

#include "hft/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hft {

struct BookLevel {
  double price = 0.0;
  double qty = 0.0;
};

// One-second snapshot of the visible book, best level first on both sides.
struct LobSnapshot {
  std::int64_t ts = 0;
  std::vector<BookLevel> bids;
  std::vector<BookLevel> asks;

  double best_bid() const { return bids.front().price; }
  double best_ask() const { return asks.front().price; }
  double mid() const { return 0.5 * (best_bid() + best_ask()); }

  // Side ordering, positive sizes, positive spread, 1..max_levels per side.
  void validate(int max_levels = 5) const;
};

struct OhlcBar {
  std::int64_t ts = 0;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;

  void validate() const;
};

// open = first open, high = max high, low = min low, close = last close.
OhlcBar aggregate_bars(std::span<const OhlcBar> bars);

// Groups second bars into complete 60s buckets aligned to ts % 60 == 0.
// Partial leading/trailing buckets are dropped.
std::vector<OhlcBar> minute_bars_from_seconds(const std::vector<OhlcBar>& second_bars);

struct MarketSeries {
  std::string symbol = "SYNTH";
  std::vector<LobSnapshot> lobs;
  std::vector<OhlcBar> second_bars;
  std::vector<OhlcBar> minute_bars;

  Index n() const { return static_cast<Index>(lobs.size()); }
  Index n_minutes() const { return static_cast<Index>(minute_bars.size()); }
  std::int64_t start_ts() const { return lobs.front().ts; }
  double mid(Index t) const { return lobs[static_cast<std::size_t>(t)].mid(); }
  double best_bid(Index t) const { return lobs[static_cast<std::size_t>(t)].best_bid(); }
  double best_ask(Index t) const { return lobs[static_cast<std::size_t>(t)].best_ask(); }
  const LobSnapshot& lob(Index t) const { return lobs[static_cast<std::size_t>(t)]; }

  void rebuild_minute_bars();
  void validate(int max_levels = 5) const;

  // Copy of seconds [begin, end); minute bars are rebuilt from the slice.
  MarketSeries slice(Index begin, Index end) const;
};

}  // namespace hft
