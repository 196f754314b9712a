#pragma once

#include "hft/execution/execution.hpp"
#include "hft/marketdata/features.hpp"
#include "hft/marketdata/synth.hpp"

#include <cmath>
#include <vector>

namespace hft::testing {

// Book ladder around the given mids; spread may be zero (the DP fixtures need
// it), so this bypasses LobSnapshot validation on purpose.
inline MarketSeries make_book_series(const std::vector<double>& mids, double spread,
                                     double depth_qty, int levels = 1, double tick = 0.01,
                                     std::int64_t start_ts = 0) {
  MarketSeries s;
  s.symbol = "TEST";
  for (std::size_t i = 0; i < mids.size(); ++i) {
    LobSnapshot lob;
    lob.ts = start_ts + static_cast<std::int64_t>(i);
    for (int l = 0; l < levels; ++l) {
      lob.bids.push_back({mids[i] - spread / 2 - l * tick, depth_qty});
      lob.asks.push_back({mids[i] + spread / 2 + l * tick, depth_qty});
    }
    OhlcBar bar;
    bar.ts = lob.ts;
    const double prev = i > 0 ? mids[i - 1] : mids[i];
    bar.open = prev;
    bar.close = mids[i];
    bar.high = std::max(prev, mids[i]);
    bar.low = std::min(prev, mids[i]);
    s.lobs.push_back(std::move(lob));
    s.second_bars.push_back(bar);
  }
  s.rebuild_minute_bars();
  return s;
}

inline std::vector<double> linear_mids(Index n, double start, double step) {
  std::vector<double> mids(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) mids[static_cast<std::size_t>(i)] = start + step * i;
  return mids;
}

inline std::vector<double> constant_mids(Index n, double value) {
  return std::vector<double>(static_cast<std::size_t>(n), value);
}

// Deterministic rising market with zero spread and deep books; the Stage-I
// efficiency studies run on this.
inline MarketSeries rising_toy_series(Index n, double start = 100.0, double step = 0.01) {
  return make_book_series(linear_mids(n, start, step), 0.0, 1e9);
}

// Five-trend fixture: alternating-sign generation order so every boundary
// leaves an extremum (bull, pullback, rally, bear, sideways).
inline SynthSpec five_regime_spec(std::uint64_t seed = 11, Index regime_s = 7200) {
  SynthSpec spec;
  spec.seed = seed;
  spec.mid0 = 100.0;
  spec.tick = 0.01;
  spec.spread_ticks = 1;
  spec.depth = {50.0, 50.0, 50.0, 50.0, 50.0};
  spec.start_ts = 0;
  spec.regimes = {
      {RegimeKind::bull, regime_s, 2e-5, 8e-5},      // bull     -> label 5
      {RegimeKind::bear, regime_s, -1e-5, 8e-5},     // pullback -> label 2
      {RegimeKind::bull, regime_s, 1e-5, 8e-5},      // rally    -> label 4
      {RegimeKind::bear, regime_s, -2e-5, 8e-5},     // bear     -> label 1
      {RegimeKind::sideways, regime_s, 0.0, 8e-5},   // sideways -> label 3
  };
  return spec;
}

inline const std::vector<int>& five_regime_expected_labels() {
  static const std::vector<int> labels = {5, 2, 4, 1, 3};
  return labels;
}

// Independent EMA oracle (naive loop, seeded at x0) for MACD cross-checks.
inline std::vector<double> naive_ema(const std::vector<double>& x, int span) {
  std::vector<double> out(x.size());
  const double k = 2.0 / (span + 1.0);
  out[0] = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) out[i] = out[i - 1] + k * (x[i] - out[i - 1]);
  return out;
}

// Exhaustive best episode return over all |A|^(N-1) action sequences, every
// transition costed through the execution module. Independent of the DP.
inline double exhaustive_best_return(const MarketSeries& s, Index begin, Index end,
                                     const ActionGrid& grid, double fee, int p0) {
  struct Rec {
    const MarketSeries& s;
    const ActionGrid& grid;
    double fee;
    Index end;
    double best(Index t, int p) {
      if (t >= end - 1) return 0.0;
      double best_v = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < grid.n_actions(); ++a) {
        double cost = 0.0;
        if (a != p) {
          try {
            cost = execute_market_order(s.lob(t), grid.position(a) - grid.position(p), fee).cost;
          } catch (const InsufficientDepthError&) {
            continue;
          }
        }
        const double r =
            grid.position(a) * s.best_bid(t + 1) - (grid.position(p) * s.best_bid(t) + cost);
        const double v = r + best(t + 1, a);
        if (v > best_v) best_v = v;
      }
      return best_v;
    }
  };
  Rec rec{s, grid, fee, end};
  return rec.best(begin, p0);
}

}  // namespace hft::testing
