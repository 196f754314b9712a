#include "hft/marketdata/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hft {

RegimeKind regime_kind_from_string(const std::string& s) {
  if (s == "bull") return RegimeKind::bull;
  if (s == "bear") return RegimeKind::bear;
  if (s == "sideways") return RegimeKind::sideways;
  throw ConfigError("unknown regime kind '" + s + "'");
}

std::string to_string(RegimeKind k) {
  switch (k) {
    case RegimeKind::bull: return "bull";
    case RegimeKind::bear: return "bear";
    case RegimeKind::sideways: return "sideways";
  }
  return "?";
}

MarketSeries synth_market(const SynthSpec& spec) {
  if (spec.regimes.empty()) throw ConfigError("synth: no regimes given");
  if (spec.mid0 <= 0.0) throw ConfigError("synth: initial mid must be positive");
  if (spec.tick <= 0.0) throw ConfigError("synth: tick must be positive");
  if (spec.spread_ticks < 1) throw ConfigError("synth: spread_ticks must be >= 1");
  if (spec.depth.empty()) throw ConfigError("synth: depth profile is empty");
  if (spec.start_ts % 60 != 0) throw ConfigError("synth: start_ts must be minute-aligned");
  for (const auto& r : spec.regimes) {
    if (r.length_s <= 0) throw ConfigError("synth: regime length must be positive");
    if (r.vol < 0.0) throw ConfigError("synth: regime volatility must be >= 0");
  }

  Index total = 0;
  for (const auto& r : spec.regimes) total += r.length_s;

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> mids(static_cast<std::size_t>(total));
  double log_mid = std::log(spec.mid0);
  Index t = 0;
  for (const auto& r : spec.regimes) {
    for (Index k = 0; k < r.length_s; ++k, ++t) {
      mids[static_cast<std::size_t>(t)] = std::exp(log_mid);
      log_mid += r.drift + (r.vol > 0.0 ? r.vol * gauss(rng) : 0.0);
    }
  }

  MarketSeries out;
  out.symbol = spec.symbol;
  out.lobs.reserve(mids.size());
  out.second_bars.reserve(mids.size());

  const double half_spread = 0.5 * spec.spread_ticks * spec.tick;
  const int levels = static_cast<int>(spec.depth.size());

  for (Index i = 0; i < total; ++i) {
    const double mid = mids[static_cast<std::size_t>(i)];
    LobSnapshot lob;
    lob.ts = spec.start_ts + i;
    lob.bids.resize(levels);
    lob.asks.resize(levels);
    for (int l = 0; l < levels; ++l) {
      lob.bids[l] = {mid - half_spread - l * spec.tick, spec.depth[l]};
      lob.asks[l] = {mid + half_spread + l * spec.tick, spec.depth[l]};
    }

    OhlcBar bar;
    bar.ts = lob.ts;
    const double prev = i > 0 ? mids[static_cast<std::size_t>(i - 1)] : mid;
    bar.open = prev;
    bar.close = mid;
    bar.high = std::max(prev, mid);
    bar.low = std::min(prev, mid);

    out.lobs.push_back(std::move(lob));
    out.second_bars.push_back(bar);
  }
  out.rebuild_minute_bars();
  return out;
}

}  // namespace hft
