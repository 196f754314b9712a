#pragma once

#include "hft/backtest/metrics.hpp"
#include "hft/pool/agent_pool.hpp"
#include "hft/router/high_env.hpp"

#include <string>
#include <vector>

namespace hft {

struct TradeRecord {
  std::int64_t ts = 0;
  char side = 'B';
  double size = 0.0;  // absolute base units
  double vwap = 0.0;
  double cost = 0.0;  // signed quote amount
  double fee = 0.0;
  double position_after = 0.0;
  double cash_after = 0.0;
  double net_value = 0.0;
};

struct SelectionRecord {
  std::int64_t minute_ts = 0;
  double position_before = 0.0;
  int label = 0;  // 1..m
  double reward = 0.0;
};

struct BacktestResult {
  EquityCurve curve;
  std::vector<TradeRecord> trades;
  std::vector<SelectionRecord> selections;  // router runs only
  MetricsReport metrics;
  long clip_count = 0;
};

// Seconds-level run of a low policy over [begin, series.n()).
// low_features may be null for policies that do not need them.
BacktestResult run_backtest(const LowPolicy& policy, const MarketSeries& series,
                            const Mat* low_features, double fee_rate, const ActionGrid& grid,
                            double initial_cash, Index begin = kFeatureWindow);

// Minute-level run of a trained router over the pool.
BacktestResult run_backtest_router(const ValueNet& router, const AgentPool& pool,
                                   const MarketSeries& series, const Mat& low_features,
                                   const Mat& high_features, double fee_rate,
                                   double initial_cash, Index minute_begin = kFeatureWindow);

std::string trade_log_csv(const std::vector<TradeRecord>& trades);
std::string equity_csv(const EquityCurve& curve);
std::string selection_csv(const std::vector<SelectionRecord>& selections);

}  // namespace hft
