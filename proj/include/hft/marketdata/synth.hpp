#pragma once

#include "hft/marketdata/lob.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hft {

enum class RegimeKind { bull, bear, sideways };

RegimeKind regime_kind_from_string(const std::string& s);
std::string to_string(RegimeKind k);

struct Regime {
  RegimeKind kind = RegimeKind::sideways;
  Index length_s = 0;
  double drift = 0.0;  // per-second log drift
  double vol = 0.0;    // per-second log volatility
};

struct SynthSpec {
  std::uint64_t seed = 7;
  std::vector<Regime> regimes;
  int spread_ticks = 1;
  std::vector<double> depth = {5.0, 5.0, 5.0, 5.0, 5.0};  // qty per level
  double mid0 = 100.0;
  double tick = 0.01;
  std::int64_t start_ts = 1'600'000'020;  // minute-aligned
  std::string symbol = "SYNTH";
};

// Seeded geometric random walk on the mid with per-regime drift/vol; the book
// is built symmetrically around the mid. Pure function of the spec.
MarketSeries synth_market(const SynthSpec& spec);

}  // namespace hft
