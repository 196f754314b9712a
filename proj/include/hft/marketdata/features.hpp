#pragma once

#include "hft/marketdata/lob.hpp"
#include "hft/types.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace hft {

inline constexpr Index kFeatureWindow = 60;
inline constexpr int kLowFeatureCount = 54;
inline constexpr int kHighFeatureCount = 19;

enum class FeatureFormula {
  imbalance,        // book imbalance over p1 levels
  rel_spread,       // (ask1 - bid1) / mid
  ret,              // mid[last] / mid[last - p1] - 1
  win_ret,          // mid[last] / mid[first] - 1
  ret_std,          // std of last p1 one-step returns
  ret_mean,         // mean of last p1 one-step returns
  macd_dif,         // windowed MACD on mids, spans (p1, p2, p3), scaled by mid
  macd_dea,
  macd_hist,
  ema_ratio,        // ema(p1) / ema(p2) - 1
  range_ratio,      // (max high - min low over last p1 bars) / mid
  close_in_range,   // (close - min low) / range over last p1 bars, 0 if flat
  depth_ratio,      // bid qty / (bid + ask qty) at level p1
  cum_depth_ratio,  // same, cumulative through level p1
  bid_share,        // bid qty at level p1 / total bid qty
  ask_share,
  depth_skew,       // qty-weighted level centroid; p1: 0 bid, 1 ask, 2 bid-ask
  book_pressure,    // log(total bid qty / total ask qty)
};

struct FeatureEntry {
  std::string name;
  FeatureFormula formula;
  int p1 = 0, p2 = 0, p3 = 0;
  bool translation_invariant = false;  // unchanged when a constant is added to all prices

  std::string formula_id() const;
  nlohmann::json params_json() const;
};

struct FeatureSchema {
  std::string schema_id;
  std::vector<FeatureEntry> entries;

  Index size() const { return static_cast<Index>(entries.size()); }
  nlohmann::json to_json() const;

  static const FeatureSchema& low();   // 54 microstructure entries on (LOB, 1s OHLC)
  static const FeatureSchema& high();  // 19 trend entries on minute OHLC
};

struct NanStats {
  long replaced = 0;
};

struct LowWindow {
  std::span<const LobSnapshot> lobs;  // exactly kFeatureWindow
  std::span<const OhlcBar> bars;
};

Vec low_level_features(const LowWindow& window, NanStats* nan = nullptr);
Vec high_level_features(std::span<const OhlcBar> bars, NanStats* nan = nullptr);

// Row t holds the features of the window ending at t; rows before the first
// full window are zero. Shared read-only across environments.
Mat low_feature_matrix(const MarketSeries& series, NanStats* nan = nullptr);
Mat high_feature_matrix(const MarketSeries& series, NanStats* nan = nullptr);

}  // namespace hft
