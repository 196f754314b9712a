#include "hft/marketdata/features.hpp"

#include "hft/marketdata/indicators.hpp"

#include <cmath>

namespace hft {

namespace {

constexpr int kMacdShort = 9;
constexpr int kMacdMid = 12;
constexpr int kMacdLong = 26;
constexpr int kEmaFast = 10;
constexpr int kEmaSlow = 30;

void push_levels(std::vector<FeatureEntry>& v, const std::string& prefix,
                 FeatureFormula f, bool invariant) {
  for (int l = 1; l <= 5; ++l) {
    v.push_back({prefix + std::to_string(l), f, l, 0, 0, invariant});
  }
}

void push_trend_block(std::vector<FeatureEntry>& v) {
  for (int lag : {1, 2, 3, 5, 10, 15, 30}) {
    v.push_back({"ret_" + std::to_string(lag), FeatureFormula::ret, lag, 0, 0, false});
  }
}

std::vector<FeatureEntry> make_low_entries() {
  std::vector<FeatureEntry> v;
  push_levels(v, "imb_l", FeatureFormula::imbalance, true);
  v.push_back({"rel_spread", FeatureFormula::rel_spread, 0, 0, 0, false});
  push_trend_block(v);
  v.push_back({"win_ret", FeatureFormula::win_ret, 0, 0, 0, false});
  for (int w : {10, 30, 60}) {
    v.push_back({"ret_std_" + std::to_string(w), FeatureFormula::ret_std, w, 0, 0, false});
  }
  for (int w : {10, 30, 60}) {
    v.push_back({"ret_mean_" + std::to_string(w), FeatureFormula::ret_mean, w, 0, 0, false});
  }
  v.push_back({"macd_dif", FeatureFormula::macd_dif, kMacdShort, kMacdMid, kMacdLong, false});
  v.push_back({"macd_dea", FeatureFormula::macd_dea, kMacdShort, kMacdMid, kMacdLong, false});
  v.push_back({"macd_hist", FeatureFormula::macd_hist, kMacdShort, kMacdMid, kMacdLong, false});
  v.push_back({"ema_ratio_10_30", FeatureFormula::ema_ratio, kEmaFast, kEmaSlow, 0, false});
  for (int w : {10, 30, 60}) {
    v.push_back({"range_" + std::to_string(w), FeatureFormula::range_ratio, w, 0, 0, false});
  }
  for (int w : {10, 30, 60}) {
    v.push_back({"close_in_range_" + std::to_string(w), FeatureFormula::close_in_range, w, 0, 0, true});
  }
  push_levels(v, "depth_ratio_l", FeatureFormula::depth_ratio, true);
  push_levels(v, "cum_depth_ratio_l", FeatureFormula::cum_depth_ratio, true);
  push_levels(v, "bid_share_l", FeatureFormula::bid_share, true);
  push_levels(v, "ask_share_l", FeatureFormula::ask_share, true);
  v.push_back({"skew_bid", FeatureFormula::depth_skew, 0, 0, 0, true});
  v.push_back({"skew_ask", FeatureFormula::depth_skew, 1, 0, 0, true});
  v.push_back({"skew_diff", FeatureFormula::depth_skew, 2, 0, 0, true});
  v.push_back({"book_pressure", FeatureFormula::book_pressure, 0, 0, 0, true});
  return v;
}

std::vector<FeatureEntry> make_high_entries() {
  std::vector<FeatureEntry> v;
  push_trend_block(v);
  for (int w : {10, 30, 60}) {
    v.push_back({"ret_std_" + std::to_string(w), FeatureFormula::ret_std, w, 0, 0, false});
  }
  v.push_back({"macd_dif", FeatureFormula::macd_dif, kMacdShort, kMacdMid, kMacdLong, false});
  v.push_back({"macd_dea", FeatureFormula::macd_dea, kMacdShort, kMacdMid, kMacdLong, false});
  v.push_back({"macd_hist", FeatureFormula::macd_hist, kMacdShort, kMacdMid, kMacdLong, false});
  v.push_back({"ema_ratio_10_30", FeatureFormula::ema_ratio, kEmaFast, kEmaSlow, 0, false});
  for (int w : {10, 30, 60}) {
    v.push_back({"range_" + std::to_string(w), FeatureFormula::range_ratio, w, 0, 0, false});
  }
  for (int w : {30, 60}) {
    v.push_back({"close_in_range_" + std::to_string(w), FeatureFormula::close_in_range, w, 0, 0, true});
  }
  return v;
}

// Per-window scratch: price path plus lazily computed indicator tails.
struct WindowCtx {
  Vec prices;                          // mids (low) or closes (high)
  const LobSnapshot* last_lob = nullptr;
  std::span<const OhlcBar> bars;
  bool macd_ready = false;
  double dif = 0, dea = 0, hist = 0;
  bool ema_ready = false;
  double ema_fast = 0, ema_slow = 0;

  double last() const { return prices[prices.size() - 1]; }

  void ensure_macd() {
    if (macd_ready) return;
    const MacdResult m = macd(prices, kMacdShort, kMacdMid, kMacdLong);
    const Index e = prices.size() - 1;
    dif = m.dif[e];
    dea = m.dea[e];
    hist = m.macd[e];
    macd_ready = true;
  }

  void ensure_ema() {
    if (ema_ready) return;
    const Index e = prices.size() - 1;
    ema_fast = ema(prices, kEmaFast)[e];
    ema_slow = ema(prices, kEmaSlow)[e];
    ema_ready = true;
  }
};

double one_step_return(const Vec& p, Index i) {  // return from i-1 to i
  return p[i] / p[i - 1] - 1.0;
}

double ret_stats(const Vec& p, int window, bool want_std) {
  const Index n_rets = p.size() - 1;
  const Index w = std::min<Index>(window, n_rets);
  double mean = 0.0;
  for (Index i = p.size() - w; i < p.size(); ++i) mean += one_step_return(p, i);
  mean /= static_cast<double>(w);
  if (!want_std) return mean;
  double var = 0.0;
  for (Index i = p.size() - w; i < p.size(); ++i) {
    const double d = one_step_return(p, i) - mean;
    var += d * d;
  }
  return std::sqrt(var / static_cast<double>(w));
}

double clamped_imbalance(const LobSnapshot& lob, int levels) {
  const int avail = static_cast<int>(std::min(lob.bids.size(), lob.asks.size()));
  return imbalance(lob, std::min(levels, avail));
}

double level_qty(const std::vector<BookLevel>& side, int level) {  // 1-based
  return level <= static_cast<int>(side.size()) ? side[level - 1].qty : 0.0;
}

double side_qty(const std::vector<BookLevel>& side) {
  double s = 0.0;
  for (const auto& l : side) s += l.qty;
  return s;
}

double skew(const std::vector<BookLevel>& side) {
  const int m = static_cast<int>(side.size());
  if (m <= 1) return 0.0;
  double num = 0.0, den = 0.0;
  for (int k = 1; k <= m; ++k) {
    num += k * side[k - 1].qty;
    den += side[k - 1].qty;
  }
  return (num / den - 1.0) / (m - 1);
}

double range_bounds(std::span<const OhlcBar> bars, int window, double* low_out) {
  const Index n = static_cast<Index>(bars.size());
  const Index w = std::min<Index>(window, n);
  double hi = bars[n - w].high, lo = bars[n - w].low;
  for (Index i = n - w; i < n; ++i) {
    hi = std::max(hi, bars[i].high);
    lo = std::min(lo, bars[i].low);
  }
  if (low_out) *low_out = lo;
  return hi;
}

double eval_entry(const FeatureEntry& e, WindowCtx& ctx) {
  switch (e.formula) {
    case FeatureFormula::imbalance:
      return clamped_imbalance(*ctx.last_lob, e.p1);
    case FeatureFormula::rel_spread:
      return (ctx.last_lob->best_ask() - ctx.last_lob->best_bid()) / ctx.last_lob->mid();
    case FeatureFormula::ret: {
      const Index i = ctx.prices.size() - 1;
      return ctx.prices[i] / ctx.prices[i - e.p1] - 1.0;
    }
    case FeatureFormula::win_ret:
      return ctx.last() / ctx.prices[0] - 1.0;
    case FeatureFormula::ret_std:
      return ret_stats(ctx.prices, e.p1, true);
    case FeatureFormula::ret_mean:
      return ret_stats(ctx.prices, e.p1, false);
    case FeatureFormula::macd_dif:
      ctx.ensure_macd();
      return ctx.dif / ctx.last();
    case FeatureFormula::macd_dea:
      ctx.ensure_macd();
      return ctx.dea / ctx.last();
    case FeatureFormula::macd_hist:
      ctx.ensure_macd();
      return ctx.hist / ctx.last();
    case FeatureFormula::ema_ratio:
      ctx.ensure_ema();
      return ctx.ema_fast / ctx.ema_slow - 1.0;
    case FeatureFormula::range_ratio: {
      double lo = 0.0;
      const double hi = range_bounds(ctx.bars, e.p1, &lo);
      return (hi - lo) / ctx.last();
    }
    case FeatureFormula::close_in_range: {
      double lo = 0.0;
      const double hi = range_bounds(ctx.bars, e.p1, &lo);
      const double range = hi - lo;
      if (range <= 0.0) return 0.0;
      return (ctx.bars.back().close - lo) / range;
    }
    case FeatureFormula::depth_ratio: {
      const double b = level_qty(ctx.last_lob->bids, e.p1);
      const double a = level_qty(ctx.last_lob->asks, e.p1);
      return a + b > 0.0 ? b / (a + b) : 0.0;
    }
    case FeatureFormula::cum_depth_ratio: {
      double b = 0.0, a = 0.0;
      for (int l = 1; l <= e.p1; ++l) {
        b += level_qty(ctx.last_lob->bids, l);
        a += level_qty(ctx.last_lob->asks, l);
      }
      return a + b > 0.0 ? b / (a + b) : 0.0;
    }
    case FeatureFormula::bid_share:
      return level_qty(ctx.last_lob->bids, e.p1) / side_qty(ctx.last_lob->bids);
    case FeatureFormula::ask_share:
      return level_qty(ctx.last_lob->asks, e.p1) / side_qty(ctx.last_lob->asks);
    case FeatureFormula::depth_skew:
      if (e.p1 == 0) return skew(ctx.last_lob->bids);
      if (e.p1 == 1) return skew(ctx.last_lob->asks);
      return skew(ctx.last_lob->bids) - skew(ctx.last_lob->asks);
    case FeatureFormula::book_pressure:
      return std::log(side_qty(ctx.last_lob->bids) / side_qty(ctx.last_lob->asks));
  }
  return 0.0;
}

Vec eval_schema(const FeatureSchema& schema, WindowCtx& ctx, NanStats* nan) {
  Vec out(schema.size());
  for (Index i = 0; i < schema.size(); ++i) {
    double v = eval_entry(schema.entries[static_cast<std::size_t>(i)], ctx);
    if (!std::isfinite(v)) {
      v = 0.0;
      if (nan) ++nan->replaced;
    }
    out[i] = v;
  }
  return out;
}

}  // namespace

std::string FeatureEntry::formula_id() const {
  switch (formula) {
    case FeatureFormula::imbalance: return "imbalance";
    case FeatureFormula::rel_spread: return "rel_spread";
    case FeatureFormula::ret: return "ret";
    case FeatureFormula::win_ret: return "win_ret";
    case FeatureFormula::ret_std: return "ret_std";
    case FeatureFormula::ret_mean: return "ret_mean";
    case FeatureFormula::macd_dif: return "macd_dif";
    case FeatureFormula::macd_dea: return "macd_dea";
    case FeatureFormula::macd_hist: return "macd_hist";
    case FeatureFormula::ema_ratio: return "ema_ratio";
    case FeatureFormula::range_ratio: return "range_ratio";
    case FeatureFormula::close_in_range: return "close_in_range";
    case FeatureFormula::depth_ratio: return "depth_ratio";
    case FeatureFormula::cum_depth_ratio: return "cum_depth_ratio";
    case FeatureFormula::bid_share: return "bid_share";
    case FeatureFormula::ask_share: return "ask_share";
    case FeatureFormula::depth_skew: return "depth_skew";
    case FeatureFormula::book_pressure: return "book_pressure";
  }
  return "?";
}

nlohmann::json FeatureEntry::params_json() const {
  nlohmann::json p = nlohmann::json::object();
  if (p1 != 0) p["p1"] = p1;
  if (p2 != 0) p["p2"] = p2;
  if (p3 != 0) p["p3"] = p3;
  p["translation_invariant"] = translation_invariant;
  return p;
}

nlohmann::json FeatureSchema::to_json() const {
  nlohmann::json entries_j = nlohmann::json::array();
  for (const auto& e : entries) {
    entries_j.push_back({{"name", e.name}, {"formula_id", e.formula_id()}, {"params", e.params_json()}});
  }
  return {{"schema_id", schema_id}, {"entries", entries_j}};
}

const FeatureSchema& FeatureSchema::low() {
  static const FeatureSchema s{"lob54.v1", make_low_entries()};
  return s;
}

const FeatureSchema& FeatureSchema::high() {
  static const FeatureSchema s{"ohlc19.v1", make_high_entries()};
  return s;
}

Vec low_level_features(const LowWindow& window, NanStats* nan) {
  if (static_cast<Index>(window.lobs.size()) != kFeatureWindow ||
      static_cast<Index>(window.bars.size()) != kFeatureWindow) {
    throw DataError("insufficient history: low-level window must hold exactly " +
                    std::to_string(kFeatureWindow) + " observations");
  }
  WindowCtx ctx;
  ctx.prices.resize(kFeatureWindow);
  for (Index i = 0; i < kFeatureWindow; ++i) ctx.prices[i] = window.lobs[i].mid();
  ctx.last_lob = &window.lobs[window.lobs.size() - 1];
  ctx.bars = window.bars;
  return eval_schema(FeatureSchema::low(), ctx, nan);
}

Vec high_level_features(std::span<const OhlcBar> bars, NanStats* nan) {
  if (static_cast<Index>(bars.size()) != kFeatureWindow) {
    throw DataError("insufficient history: high-level window must hold exactly " +
                    std::to_string(kFeatureWindow) + " minute bars");
  }
  WindowCtx ctx;
  ctx.prices.resize(kFeatureWindow);
  for (Index i = 0; i < kFeatureWindow; ++i) ctx.prices[i] = bars[i].close;
  ctx.last_lob = nullptr;
  ctx.bars = bars;
  return eval_schema(FeatureSchema::high(), ctx, nan);
}

Mat low_feature_matrix(const MarketSeries& series, NanStats* nan) {
  const Index n = series.n();
  Mat out = Mat::Zero(n, kLowFeatureCount);
  for (Index t = kFeatureWindow - 1; t < n; ++t) {
    const Index b = t - kFeatureWindow + 1;
    LowWindow w{{series.lobs.data() + b, static_cast<std::size_t>(kFeatureWindow)},
                {series.second_bars.data() + b, static_cast<std::size_t>(kFeatureWindow)}};
    out.row(t) = low_level_features(w, nan).transpose();
  }
  return out;
}

Mat high_feature_matrix(const MarketSeries& series, NanStats* nan) {
  const Index n = series.n_minutes();
  Mat out = Mat::Zero(n, kHighFeatureCount);
  for (Index t = kFeatureWindow - 1; t < n; ++t) {
    const Index b = t - kFeatureWindow + 1;
    out.row(t) = high_level_features(
                     {series.minute_bars.data() + b, static_cast<std::size_t>(kFeatureWindow)}, nan)
                     .transpose();
  }
  return out;
}

}  // namespace hft
