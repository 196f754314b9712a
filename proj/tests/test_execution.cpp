#include "hft/execution/low_env.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace hft;

namespace {

LobSnapshot two_level_book() {
  LobSnapshot lob;
  lob.ts = 0;
  lob.bids = {{99.0, 1.0}, {98.0, 2.0}};
  lob.asks = {{100.0, 1.0}, {101.0, 2.0}};
  return lob;
}

}  // namespace

TEST_CASE("buy walks the ask side level by level") {
  const Fill f = execute_market_order(two_level_book(), 2.0, 0.0);
  CHECK(f.cost == 201.0);  // 100*1 + 101*1
  CHECK(f.vwap == doctest::Approx(100.5));
  CHECK(f.levels_consumed == 2);
  CHECK(f.signed_size == 2.0);
}

TEST_CASE("partial single level buy") {
  LobSnapshot lob;
  lob.bids = {{99.0, 1.0}};
  lob.asks = {{100.0, 1.0}};
  const Fill f = execute_market_order(lob, 0.5, 0.0);
  CHECK(f.cost == doctest::Approx(50.0));
  CHECK(f.vwap == doctest::Approx(100.0));
}

TEST_CASE("commission scales the buy cost") {
  LobSnapshot lob;
  lob.bids = {{99.0, 1.0}};
  lob.asks = {{100.0, 1.0}};
  const Fill f = execute_market_order(lob, 1.0, 0.00015);
  CHECK(f.cost == doctest::Approx(100.0 * 1.00015).epsilon(1e-12));
}

TEST_CASE("sell proceeds are reduced by the fee") {
  LobSnapshot lob;
  lob.bids = {{99.0, 2.0}};
  lob.asks = {{100.0, 2.0}};
  const Fill f = execute_market_order(lob, -1.0, 0.001);
  CHECK(f.signed_size == -1.0);
  CHECK(f.cost == doctest::Approx(-99.0 * 0.999).epsilon(1e-12));
  CHECK(f.vwap == doctest::Approx(99.0));
}

TEST_CASE("insufficient depth reports the fillable remainder") {
  try {
    execute_market_order(two_level_book(), 5.0, 0.0);
    FAIL("expected InsufficientDepthError");
  } catch (const InsufficientDepthError& e) {
    CHECK(e.fillable == doctest::Approx(3.0));
  }
  const ClippedFill cf = execute_market_order_clipped(two_level_book(), 5.0, 0.0);
  CHECK(cf.clipped);
  CHECK(cf.fill.signed_size == doctest::Approx(3.0));
}

TEST_CASE("net value marks the position at the best bid") {
  AccountState acc;
  acc.cash = 100.0;
  CHECK(net_value(acc, two_level_book()) == 100.0);

  acc.cash = 0.0;
  acc.position = 2.0;
  LobSnapshot lob;
  lob.bids = {{50.0, 1.0}};
  lob.asks = {{51.0, 1.0}};
  CHECK(net_value(acc, lob) == 100.0);
}

TEST_CASE("buying realizes the spread in net value") {
  LobSnapshot lob;
  lob.bids = {{99.0, 5.0}};
  lob.asks = {{100.0, 5.0}};
  AccountState acc;
  acc.cash = 100.0;
  const Fill f = execute_market_order(lob, 1.0, 0.0);
  acc.cash -= f.cost;
  acc.position += f.signed_size;
  CHECK(net_value(acc, lob) == doctest::Approx(99.0));
}

TEST_CASE("cash conservation holds for every trade") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> qty(0.5, 3.0);
  for (int i = 0; i < 200; ++i) {
    LobSnapshot lob;
    for (int l = 0; l < 3; ++l) {
      lob.bids.push_back({100.0 - 0.5 * l - 0.25, qty(rng)});
      lob.asks.push_back({100.0 + 0.5 * l + 0.25, qty(rng)});
    }
    const double size = (i % 2 == 0 ? 1.0 : -1.0) * qty(rng) * 0.5;
    AccountState acc;
    acc.cash = 1000.0;
    const Fill f = execute_market_order(lob, size, 0.0002);
    acc.cash -= f.cost;
    CHECK(acc.cash == doctest::Approx(1000.0 - f.cost).epsilon(1e-15));
  }
}

TEST_CASE("vwap is monotone in order size") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> qty(0.2, 4.0);
  std::uniform_real_distribution<double> tick(0.01, 0.5);
  for (int i = 0; i < 300; ++i) {
    LobSnapshot lob;
    const double step = tick(rng);
    double depth = 0.0;
    for (int l = 0; l < 5; ++l) {
      const double q = qty(rng);
      lob.bids.push_back({100.0 - step * (l + 1), q});
      lob.asks.push_back({100.0 + step * (l + 1), q});
      depth += q;
    }
    double prev_buy = 0.0, prev_sell = 1e18;
    for (double frac : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      const double size = frac * depth;
      const double buy_vwap = execute_market_order(lob, size, 0.0).vwap;
      const double sell_vwap = execute_market_order(lob, -size, 0.0).vwap;
      CHECK(buy_vwap >= prev_buy);
      CHECK(sell_vwap <= prev_sell);
      prev_buy = buy_vwap;
      prev_sell = sell_vwap;
    }
  }
}

TEST_CASE("round trips never profit under spread or fee") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> spread(0.0, 1.0);
  std::uniform_real_distribution<double> fee(0.0, 0.001);
  for (int i = 0; i < 200; ++i) {
    const double sp = spread(rng);
    const double fr = fee(rng);
    LobSnapshot lob;
    lob.bids = {{100.0 - sp / 2, 10.0}};
    lob.asks = {{100.0 + sp / 2, 10.0}};
    AccountState acc;
    acc.cash = 1000.0;
    const double v0 = net_value(acc, lob);
    for (double size : {1.5, -1.5}) {
      const Fill f = execute_market_order(lob, size, fr);
      acc.cash -= f.cost;
      acc.position += f.signed_size;
    }
    const double v1 = net_value(acc, lob);
    if (sp == 0.0 && fr == 0.0) {
      CHECK(v1 == doctest::Approx(v0));
    } else {
      CHECK(v1 < v0);
    }
  }
}

TEST_CASE("step rewards follow the net value differential formula") {
  // hold through a bid move
  {
    MarketSeries s = testing::make_book_series({100.0, 101.0}, 2.0, 10.0);
    AccountState acc;
    acc.cash = 0.0;
    acc.position = 1.0;
    const StepOutcome out = step_account(s, acc, 0, 1.0);
    CHECK(out.reward == doctest::Approx(1.0));  // 1*100 - 1*99
    CHECK_FALSE(out.traded);
  }
  // same position, flat prices
  {
    MarketSeries s = testing::make_book_series({100.0, 100.0}, 2.0, 10.0);
    AccountState acc;
    acc.position = 0.5;
    CHECK(step_account(s, acc, 0, 0.5).reward == 0.0);
  }
  // buy one at ask 100 with the bid pinned at 99
  {
    MarketSeries s = testing::make_book_series({99.5, 99.5}, 1.0, 10.0);
    AccountState acc;
    acc.cash = 100.0;
    const StepOutcome out = step_account(s, acc, 0, 1.0);
    CHECK(out.reward == doctest::Approx(1.0 * 99.0 - (0.0 + 100.0)));
    CHECK(acc.cash == doctest::Approx(0.0));
  }
}

TEST_CASE("episode rewards telescope to the net value change") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    SynthSpec spec;
    spec.seed = rng();
    spec.regimes = {{RegimeKind::bull, 200, 5e-5, 4e-4}};
    spec.depth = {4.0, 4.0, 4.0, 4.0, 4.0};
    const MarketSeries s = synth_market(spec);
    const Mat features = Mat::Zero(s.n(), kLowFeatureCount);
    const ActionGrid grid(2.0, 5);
    LowLevelEnv env(s, features, grid, 0.0002, kFeatureWindow, s.n(), 500.0);
    env.reset(0);
    const double v0 = env.net_value_now();
    double reward_sum = 0.0;
    std::uniform_int_distribution<int> action(0, grid.n_actions() - 1);
    while (!env.done()) reward_sum += env.step(action(rng)).reward;
    const double vt = env.net_value_now();
    CHECK(reward_sum == doctest::Approx(vt - v0).epsilon(1e-9));
  }
}

TEST_CASE("the all cash do nothing policy earns exactly zero") {
  const MarketSeries s = synth_market(testing::five_regime_spec(31, 120));
  const Mat features = Mat::Zero(s.n(), kLowFeatureCount);
  const ActionGrid grid(1.0, 5);
  LowLevelEnv env(s, features, grid, 0.0002, kFeatureWindow, s.n(), 100.0);
  env.reset(0);
  while (!env.done()) CHECK(env.step(0).reward == 0.0);
  CHECK(env.account().cash == 100.0);
}

TEST_CASE("thin books clip instead of aborting and count the event") {
  MarketSeries s = testing::make_book_series(testing::constant_mids(70, 100.0), 1.0, 0.5);
  const Mat features = Mat::Zero(s.n(), kLowFeatureCount);
  const ActionGrid grid(2.0, 3);  // full position exceeds one-level depth
  LowLevelEnv env(s, features, grid, 0.0, kFeatureWindow, s.n(), 1000.0);
  env.reset(0);
  const LowStepResult r = env.step(2);
  CHECK(r.clipped);
  CHECK(env.clip_count() == 1);
  CHECK(env.account().position == doctest::Approx(0.5));
}

TEST_CASE("grid positions are uniform and the env rejects bad bounds") {
  const ActionGrid grid(2.0, 5);
  CHECK(grid.positions() == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  CHECK(grid.nearest_index(0.6) == 1);
  CHECK(grid.nearest_index(1.9) == 4);
  CHECK_THROWS_AS(ActionGrid(1.0, 1), ConfigError);

  const MarketSeries s = testing::make_book_series(testing::constant_mids(80, 100.0), 1.0, 5.0);
  const Mat features = Mat::Zero(s.n(), kLowFeatureCount);
  CHECK_THROWS_AS(LowLevelEnv(s, features, grid, 0.0, 10, s.n(), 100.0), ConfigError);
}
