#include "hft/marketdata/lob.hpp"

#include <algorithm>
#include <map>

namespace hft {

void LobSnapshot::validate(int max_levels) const {
  if (bids.empty() || asks.empty()) {
    throw DataError("LOB snapshot needs at least one level per side");
  }
  if (static_cast<int>(bids.size()) > max_levels ||
      static_cast<int>(asks.size()) > max_levels) {
    throw DataError("LOB snapshot exceeds " + std::to_string(max_levels) + " levels");
  }
  if (best_ask() <= best_bid()) {
    throw DataError("crossed book: best ask " + std::to_string(best_ask()) +
                    " <= best bid " + std::to_string(best_bid()));
  }
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (bids[i].qty <= 0.0) throw DataError("non-positive bid quantity at level " + std::to_string(i + 1));
    if (i > 0 && bids[i].price >= bids[i - 1].price) {
      throw DataError("bid prices not strictly decreasing at level " + std::to_string(i + 1));
    }
  }
  for (std::size_t i = 0; i < asks.size(); ++i) {
    if (asks[i].qty <= 0.0) throw DataError("non-positive ask quantity at level " + std::to_string(i + 1));
    if (i > 0 && asks[i].price <= asks[i - 1].price) {
      throw DataError("ask prices not strictly increasing at level " + std::to_string(i + 1));
    }
  }
}

void OhlcBar::validate() const {
  if (!(low <= high && low <= open && open <= high && low <= close && close <= high)) {
    throw DataError("invalid OHLC bar at ts " + std::to_string(ts));
  }
}

OhlcBar aggregate_bars(std::span<const OhlcBar> bars) {
  if (bars.empty()) throw DataError("cannot aggregate an empty bar span");
  OhlcBar out;
  out.ts = bars.front().ts;
  out.open = bars.front().open;
  out.close = bars.back().close;
  out.high = bars.front().high;
  out.low = bars.front().low;
  for (const auto& b : bars) {
    out.high = std::max(out.high, b.high);
    out.low = std::min(out.low, b.low);
  }
  return out;
}

std::vector<OhlcBar> minute_bars_from_seconds(const std::vector<OhlcBar>& second_bars) {
  std::vector<OhlcBar> out;
  std::size_t i = 0;
  const std::size_t n = second_bars.size();
  while (i < n) {
    const std::int64_t minute = second_bars[i].ts / 60 * 60;
    if (second_bars[i].ts != minute) {  // skip to the next aligned bucket
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && second_bars[j].ts < minute + 60) ++j;
    if (j - i == 60) {
      OhlcBar bar = aggregate_bars(std::span<const OhlcBar>(second_bars.data() + i, 60));
      bar.ts = minute;
      out.push_back(bar);
    }
    i = j;
  }
  return out;
}

void MarketSeries::rebuild_minute_bars() {
  minute_bars = minute_bars_from_seconds(second_bars);
}

void MarketSeries::validate(int max_levels) const {
  if (lobs.size() != second_bars.size()) {
    throw DataError("LOB and second-bar sequences differ in length");
  }
  if (lobs.empty()) throw DataError("empty market series");
  for (std::size_t i = 0; i < lobs.size(); ++i) {
    lobs[i].validate(max_levels);
    second_bars[i].validate();
    if (lobs[i].ts != second_bars[i].ts) {
      throw DataError("LOB/bar timestamp mismatch at index " + std::to_string(i));
    }
    if (i > 0 && lobs[i].ts != lobs[i - 1].ts + 1) {
      throw DataError("second timestamps not on a 1s stride at index " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < minute_bars.size(); ++i) {
    minute_bars[i].validate();
    if (minute_bars[i].ts % 60 != 0) {
      throw DataError("minute bar not aligned to a 60s boundary at index " + std::to_string(i));
    }
    if (i > 0 && minute_bars[i].ts != minute_bars[i - 1].ts + 60) {
      throw DataError("minute timestamps not on a 60s stride at index " + std::to_string(i));
    }
  }
}

MarketSeries MarketSeries::slice(Index begin, Index end) const {
  if (begin < 0 || end > n() || begin >= end) {
    throw ConfigError("invalid series slice [" + std::to_string(begin) + ", " +
                      std::to_string(end) + ")");
  }
  MarketSeries out;
  out.symbol = symbol;
  out.lobs.assign(lobs.begin() + begin, lobs.begin() + end);
  out.second_bars.assign(second_bars.begin() + begin, second_bars.begin() + end);
  out.rebuild_minute_bars();
  return out;
}

}  // namespace hft
