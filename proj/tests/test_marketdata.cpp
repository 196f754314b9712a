#include "hft/marketdata/csv.hpp"
#include "hft/marketdata/features.hpp"
#include "hft/marketdata/indicators.hpp"
#include "hft/marketdata/synth.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace hft;

namespace {

std::string temp_csv(const std::string& content) {
  static int counter = 0;
  const std::string path =
      (std::filesystem::temp_directory_path() / ("md_test_" + std::to_string(counter++) + ".csv"))
          .string();
  std::ofstream out(path);
  out << content;
  return path;
}

std::string row(std::int64_t ts, double bid, double ask, double qty, double px) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%lld,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                static_cast<long long>(ts), bid, qty, ask, qty, px, px, px, px);
  return buf;
}

const char* kHeader = "ts,bid_px_1,bid_qty_1,ask_px_1,ask_qty_1,open,high,low,close\n";

}  // namespace

TEST_CASE("csv round trip on a well formed file") {
  std::string body = kHeader;
  body += row(60, 99.0, 101.0, 5.0, 100.0);
  body += row(61, 99.0, 101.0, 5.0, 100.0);
  body += row(62, 99.5, 101.5, 5.0, 100.5);
  const MarketSeries s = load_market_csv(temp_csv(body));
  CHECK(s.n() == 3);
  CHECK(s.lobs[2].best_bid() == doctest::Approx(99.5));
  CHECK(s.second_bars[2].close == doctest::Approx(100.5));
}

TEST_CASE("non monotonic timestamps are rejected with the offending row") {
  std::string body = kHeader;
  body += row(1, 99.0, 101.0, 5.0, 100.0);
  body += row(3, 99.0, 101.0, 5.0, 100.0);
  body += row(2, 99.0, 101.0, 5.0, 100.0);
  CHECK_THROWS_WITH_AS(load_market_csv(temp_csv(body)), "non-monotonic at row 3", DataError);
}

TEST_CASE("crossed books are rejected") {
  std::string body = kHeader;
  body += row(1, 101.0, 100.0, 5.0, 100.0);
  CHECK_THROWS_AS(load_market_csv(temp_csv(body)), DataError);
}

TEST_CASE("gaps reject unless fill=hold repairs them") {
  std::string body = kHeader;
  body += row(60, 99.0, 101.0, 5.0, 100.0);
  body += row(63, 99.5, 101.5, 5.0, 100.5);
  CHECK_THROWS_AS(load_market_csv(temp_csv(body)), DataError);

  CsvSpec spec;
  spec.fill = CsvSpec::Fill::hold;
  const MarketSeries s = load_market_csv(temp_csv(body), spec);
  CHECK(s.n() == 4);
  CHECK(s.lobs[1].best_bid() == doctest::Approx(99.0));  // held snapshot
  CHECK(s.lobs[1].ts == 61);

  spec.max_gap_s = 1;  // gap of 2 exceeds the tolerance
  CHECK_THROWS_AS(load_market_csv(temp_csv(body), spec), DataError);
}

TEST_CASE("minute aggregation matches a direct recomputation") {
  SynthSpec spec;
  spec.seed = 5;
  spec.regimes = {{RegimeKind::bull, 120, 1e-4, 2e-4}};
  spec.start_ts = 0;
  const MarketSeries s = synth_market(spec);
  REQUIRE(s.n_minutes() == 2);
  for (int m = 0; m < 2; ++m) {
    double high = 0.0, low = 1e18;
    for (int i = 0; i < 60; ++i) {
      high = std::max(high, s.second_bars[static_cast<std::size_t>(60 * m + i)].high);
      low = std::min(low, s.second_bars[static_cast<std::size_t>(60 * m + i)].low);
    }
    CHECK(s.minute_bars[static_cast<std::size_t>(m)].high == doctest::Approx(high));
    CHECK(s.minute_bars[static_cast<std::size_t>(m)].low == doctest::Approx(low));
    CHECK(s.minute_bars[static_cast<std::size_t>(m)].open ==
          doctest::Approx(s.second_bars[static_cast<std::size_t>(60 * m)].open));
    CHECK(s.minute_bars[static_cast<std::size_t>(m)].close ==
          doctest::Approx(s.second_bars[static_cast<std::size_t>(60 * m + 59)].close));
  }
}

TEST_CASE("minute aggregation is associative over sub spans") {
  SynthSpec spec;
  spec.seed = 9;
  spec.regimes = {{RegimeKind::sideways, 60, 0.0, 3e-4}};
  spec.start_ts = 0;
  const MarketSeries s = synth_market(spec);
  const auto& bars = s.second_bars;
  const OhlcBar direct = aggregate_bars({bars.data(), 60});
  const OhlcBar first = aggregate_bars({bars.data(), 30});
  const OhlcBar second = aggregate_bars({bars.data() + 30, 30});
  const std::vector<OhlcBar> halves = {first, second};
  const OhlcBar nested = aggregate_bars({halves.data(), 2});
  CHECK(direct.open == nested.open);
  CHECK(direct.high == nested.high);
  CHECK(direct.low == nested.low);
  CHECK(direct.close == nested.close);
}

TEST_CASE("synth zero volatility keeps the mid constant") {
  SynthSpec spec;
  spec.seed = 7;
  spec.regimes = {{RegimeKind::sideways, 100, 0.0, 0.0}};
  const MarketSeries s = synth_market(spec);
  REQUIRE(s.n() == 100);
  for (Index t = 0; t < s.n(); ++t) CHECK(s.mid(t) == s.mid(0));
}

TEST_CASE("synth is a pure function of the spec") {
  const SynthSpec spec = testing::five_regime_spec(21, 600);
  const MarketSeries a = synth_market(spec);
  const MarketSeries b = synth_market(spec);
  REQUIRE(a.n() == b.n());
  for (Index t = 0; t < a.n(); ++t) {
    CHECK(a.mid(t) == b.mid(t));  // bit identical
    CHECK(a.lobs[static_cast<std::size_t>(t)].bids[0].qty ==
          b.lobs[static_cast<std::size_t>(t)].bids[0].qty);
  }
}

TEST_CASE("synth bull drift wins over noise in most seeds") {
  int up = 0;
  const int seeds = 100;
  for (int seed = 0; seed < seeds; ++seed) {
    SynthSpec spec;
    spec.seed = static_cast<std::uint64_t>(seed);
    spec.regimes = {{RegimeKind::bull, 10000, 1e-5, 1e-4}};
    const MarketSeries s = synth_market(spec);
    if (s.mid(s.n() - 1) > s.mid(0)) ++up;
  }
  CHECK(up > 95);
}

TEST_CASE("synthetic books satisfy the snapshot invariants") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mid(1.0, 1000.0);
  std::uniform_int_distribution<int> spread(1, 5);
  for (int i = 0; i < 200; ++i) {
    SynthSpec spec;
    spec.seed = rng();
    spec.mid0 = mid(rng);
    spec.spread_ticks = spread(rng);
    spec.regimes = {{RegimeKind::sideways, 5, 0.0, 1e-3}};
    const MarketSeries s = synth_market(spec);
    for (const auto& lob : s.lobs) CHECK_NOTHROW(lob.validate());
  }
}

TEST_CASE("imbalance evaluates the appendix formula") {
  LobSnapshot lob;
  lob.ts = 0;
  lob.bids = {{99.0, 1.0}, {98.0, 2.0}};
  lob.asks = {{101.0, 3.0}, {102.0, 1.0}};
  CHECK(imbalance(lob, 1) == doctest::Approx(0.5));  // (3-1)/(3+1)

  lob.bids = {{99.0, 2.0}, {98.0, 2.0}};
  lob.asks = {{101.0, 1.0}, {102.0, 1.0}};
  CHECK(imbalance(lob, 2) == doctest::Approx(-1.0 / 3.0));

  LobSnapshot balanced;
  balanced.bids = {{99.0, 4.0}};
  balanced.asks = {{101.0, 4.0}};
  CHECK(imbalance(balanced, 1) == doctest::Approx(0.0));
}

TEST_CASE("imbalance is antisymmetric under side swap") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> qty(0.1, 10.0);
  for (int i = 0; i < 100; ++i) {
    LobSnapshot lob;
    for (int l = 0; l < 3; ++l) {
      lob.bids.push_back({99.0 - l, qty(rng)});
      lob.asks.push_back({101.0 + l, qty(rng)});
    }
    LobSnapshot swapped = lob;
    for (int l = 0; l < 3; ++l) std::swap(swapped.bids[l].qty, swapped.asks[l].qty);
    CHECK(imbalance(lob, 3) == doctest::Approx(-imbalance(swapped, 3)).epsilon(1e-12));
  }
}

TEST_CASE("macd of a constant series is exactly zero") {
  const Vec prices = Vec::Constant(50, 42.5);
  const MacdResult r = macd(prices, 3, 6, 12);
  for (Index i = 0; i < prices.size(); ++i) {
    CHECK(r.dif[i] == 0.0);
    CHECK(r.dea[i] == 0.0);
    CHECK(r.macd[i] == 0.0);
  }
}

TEST_CASE("macd on a ramp matches the naive ema oracle and turns positive") {
  std::vector<double> px(64);
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = 100.0 + 0.5 * static_cast<double>(i);
  Vec prices = Eigen::Map<Vec>(px.data(), static_cast<Index>(px.size()));
  const MacdResult r = macd(prices, 3, 6, 12);

  const auto ema6 = testing::naive_ema(px, 6);
  const auto ema12 = testing::naive_ema(px, 12);
  std::vector<double> dif(px.size());
  for (std::size_t i = 0; i < px.size(); ++i) dif[i] = ema6[i] - ema12[i];
  const auto dea = testing::naive_ema(dif, 3);

  for (std::size_t i = 0; i < px.size(); ++i) {
    CHECK(r.dif[static_cast<Index>(i)] == doctest::Approx(dif[i]).epsilon(1e-12));
    CHECK(r.dea[static_cast<Index>(i)] == doctest::Approx(dea[i]).epsilon(1e-12));
    if (i >= 12) CHECK(r.dif[static_cast<Index>(i)] > 0.0);
  }
}

TEST_CASE("macd handles a single element through the seeding rule") {
  const Vec prices = Vec::Constant(1, 7.0);
  const MacdResult r = macd(prices, 3, 6, 12);
  CHECK(r.dif[0] == 0.0);
  CHECK(r.dea[0] == 0.0);
  CHECK(r.macd[0] == 0.0);
}

TEST_CASE("feature schemas carry the documented counts and export JSON") {
  CHECK(FeatureSchema::low().size() == kLowFeatureCount);
  CHECK(FeatureSchema::high().size() == kHighFeatureCount);
  const auto j = FeatureSchema::low().to_json();
  CHECK(j.at("schema_id").get<std::string>() == "lob54.v1");
  CHECK(j.at("entries").size() == kLowFeatureCount);
  CHECK(j.at("entries")[0].contains("formula_id"));
  CHECK(j.at("entries")[0].contains("params"));
}

TEST_CASE("zero volatility window zeroes every trend feature") {
  const MarketSeries s = testing::make_book_series(testing::constant_mids(60, 100.0), 1.0, 5.0, 5);
  const LowWindow w{{s.lobs.data(), 60}, {s.second_bars.data(), 60}};
  const Vec f = low_level_features(w);
  const auto& schema = FeatureSchema::low();
  for (Index i = 0; i < f.size(); ++i) {
    const auto& e = schema.entries[static_cast<std::size_t>(i)];
    if (e.formula == FeatureFormula::ret || e.formula == FeatureFormula::win_ret ||
        e.formula == FeatureFormula::ret_std || e.formula == FeatureFormula::ret_mean ||
        e.formula == FeatureFormula::macd_dif || e.formula == FeatureFormula::macd_dea ||
        e.formula == FeatureFormula::macd_hist || e.formula == FeatureFormula::ema_ratio ||
        e.formula == FeatureFormula::range_ratio) {
      CHECK_MESSAGE(f[i] == 0.0, e.name);
    }
    if (e.formula == FeatureFormula::imbalance) CHECK(f[i] == 0.0);  // symmetric book
    if (e.formula == FeatureFormula::rel_spread) CHECK(f[i] == doctest::Approx(0.01));
  }
}

TEST_CASE("identical windows produce identical vectors") {
  const MarketSeries s = synth_market(testing::five_regime_spec(3, 120));
  const LowWindow w{{s.lobs.data(), 60}, {s.second_bars.data(), 60}};
  const Vec a = low_level_features(w);
  const Vec b = low_level_features(w);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("a one tick mid step at window index 30 shows up in the lag-30 return") {
  std::vector<double> mids(60, 100.0);
  for (std::size_t i = 30; i < 60; ++i) mids[i] = 100.01;
  const MarketSeries s = testing::make_book_series(mids, 1.0, 5.0);
  const LowWindow w{{s.lobs.data(), 60}, {s.second_bars.data(), 60}};
  const Vec f = low_level_features(w);
  const auto& schema = FeatureSchema::low();
  for (Index i = 0; i < schema.size(); ++i) {
    const auto& e = schema.entries[static_cast<std::size_t>(i)];
    if (e.formula == FeatureFormula::ret && e.p1 == 30) {
      CHECK(f[i] == doctest::Approx(0.01 / 100.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("translation-invariant features ignore an additive price shift") {
  const SynthSpec spec = testing::five_regime_spec(13, 120);
  const MarketSeries s = synth_market(spec);
  MarketSeries shifted = s;
  for (auto& lob : shifted.lobs) {
    for (auto& l : lob.bids) l.price += 5.0;
    for (auto& l : lob.asks) l.price += 5.0;
  }
  for (auto& bar : shifted.second_bars) {
    bar.open += 5.0;
    bar.high += 5.0;
    bar.low += 5.0;
    bar.close += 5.0;
  }
  shifted.rebuild_minute_bars();

  const LowWindow wa{{s.lobs.data(), 60}, {s.second_bars.data(), 60}};
  const LowWindow wb{{shifted.lobs.data(), 60}, {shifted.second_bars.data(), 60}};
  const Vec a = low_level_features(wa);
  const Vec b = low_level_features(wb);
  const auto& schema = FeatureSchema::low();
  for (Index i = 0; i < schema.size(); ++i) {
    if (schema.entries[static_cast<std::size_t>(i)].translation_invariant) {
      CHECK_MESSAGE(a[i] == doctest::Approx(b[i]).epsilon(1e-12),
                    schema.entries[static_cast<std::size_t>(i)].name);
    }
  }
}

TEST_CASE("short windows are rejected") {
  const MarketSeries s = testing::make_book_series(testing::constant_mids(30, 100.0), 1.0, 5.0);
  const LowWindow w{{s.lobs.data(), 30}, {s.second_bars.data(), 30}};
  CHECK_THROWS_AS(low_level_features(w), DataError);
}

TEST_CASE("high level features zero out on constant minute bars") {
  std::vector<OhlcBar> bars(60);
  for (std::size_t i = 0; i < bars.size(); ++i) {
    bars[i] = {static_cast<std::int64_t>(60 * i), 10.0, 10.0, 10.0, 10.0};
  }
  const Vec f = high_level_features({bars.data(), 60});
  CHECK(f.size() == kHighFeatureCount);
  for (Index i = 0; i < f.size(); ++i) CHECK(f[i] == 0.0);
}

TEST_CASE("high level uptrend window turns macd features positive") {
  std::vector<OhlcBar> bars(60);
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double px = 100.0 + static_cast<double>(i);
    bars[i] = {static_cast<std::int64_t>(60 * i), px, px + 0.5, px - 0.5, px};
  }
  const Vec f = high_level_features({bars.data(), 60});
  const auto& schema = FeatureSchema::high();
  for (Index i = 0; i < schema.size(); ++i) {
    if (schema.entries[static_cast<std::size_t>(i)].formula == FeatureFormula::macd_dif) {
      CHECK(f[i] > 0.0);
    }
  }
}

TEST_CASE("nan policy replaces non finite entries and counts them") {
  // zero quantities break book_pressure's log; the entry must come back 0
  std::vector<double> mids = testing::constant_mids(60, 100.0);
  MarketSeries s = testing::make_book_series(mids, 1.0, 5.0);
  for (auto& lob : s.lobs) {
    for (auto& level : lob.bids) level.qty = 0.0;
  }
  const LowWindow w{{s.lobs.data(), 60}, {s.second_bars.data(), 60}};
  NanStats nan;
  const Vec f = low_level_features(w, &nan);
  CHECK(nan.replaced > 0);
  for (Index i = 0; i < f.size(); ++i) CHECK(std::isfinite(f[i]));
}
