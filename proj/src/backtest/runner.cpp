#include "hft/backtest/runner.hpp"

#include "hft/io/serde.hpp"
#include "hft/learner/trainer.hpp"
#include "hft/router/router_train.hpp"

#include <cmath>
#include <sstream>

namespace hft {

namespace {

void record_trade(std::vector<TradeRecord>& trades, std::int64_t ts, const Fill& fill,
                  const AccountState& account, double nv) {
  TradeRecord tr;
  tr.ts = ts;
  tr.side = fill.signed_size >= 0.0 ? 'B' : 'S';
  tr.size = std::abs(fill.signed_size);
  tr.vwap = fill.vwap;
  tr.cost = fill.cost;
  tr.fee = fill.fee_paid;
  tr.position_after = account.position;
  tr.cash_after = account.cash;
  tr.net_value = nv;
  trades.push_back(tr);
}

void fill_trade_stats(BacktestResult& r, Index horizon_s) {
  r.metrics.trade_count = static_cast<long>(r.trades.size());
  r.metrics.avg_holding_s =
      static_cast<double>(horizon_s) / static_cast<double>(r.trades.size() + 1);
}

}  // namespace

BacktestResult run_backtest(const LowPolicy& policy, const MarketSeries& series,
                            const Mat* low_features, double fee_rate, const ActionGrid& grid,
                            double initial_cash, Index begin) {
  Mat empty_row(series.n(), 0);
  const bool need = policy.needs_features();
  if (need && low_features == nullptr) {
    throw ConfigError("policy needs features but none were provided");
  }
  const Mat& feats = need ? *low_features : empty_row;

  BacktestResult result;
  AccountState account;
  account.fee_rate = fee_rate;
  account.cash = initial_cash;
  account.position = 0.0;

  const Index end = series.n();
  if (begin >= end - 1) throw ConfigError("series too short for a backtest");

  result.curve.ts.push_back(series.lob(begin).ts);
  result.curve.value.push_back(net_value(account, series.lob(begin)));

  for (Index t = begin; t < end - 1; ++t) {
    const int target = policy.act(t, feats.row(t).transpose(),
                                  account.position / grid.max_position());
    const StepOutcome out = step_account(series, account, t, grid.position(target));
    if (out.clipped) ++result.clip_count;
    if (out.traded) {
      record_trade(result.trades, series.lob(t).ts, out.fill, account,
                   net_value(account, series.lob(t)));
    }
    result.curve.ts.push_back(series.lob(t + 1).ts);
    result.curve.value.push_back(net_value(account, series.lob(t + 1)));
  }

  result.metrics = compute_metrics(result.curve);
  fill_trade_stats(result, end - 1 - begin);
  return result;
}

BacktestResult run_backtest_router(const ValueNet& router, const AgentPool& pool,
                                   const MarketSeries& series, const Mat& low_features,
                                   const Mat& high_features, double fee_rate,
                                   double initial_cash, Index minute_begin) {
  const Index minute_end = (series.n() - 1) / 60;
  HighLevelEnv env(series, low_features, high_features, pool, fee_rate, minute_begin,
                   minute_end, initial_cash);

  BacktestResult result;
  env.set_second_hook([&](Index t, const AccountState& account, const StepOutcome& out) {
    if (out.traded) {
      record_trade(result.trades, series.lob(t).ts, out.fill, account,
                   net_value(account, series.lob(t)));
    }
    result.curve.ts.push_back(series.lob(t + 1).ts);
    result.curve.value.push_back(net_value(account, series.lob(t + 1)));
  });

  env.reset(0);
  result.curve.ts.push_back(series.lob(minute_begin * 60).ts);
  result.curve.value.push_back(env.net_value_now());

  while (!env.done()) {
    const Vec state = env.state();
    const int label = masked_argmax(router.forward(state), {});
    SelectionRecord sel;
    sel.minute_ts = series.lob(env.minute_cursor() * 60).ts;
    sel.position_before = env.account().position;
    sel.label = label + 1;
    sel.reward = env.step(label).reward;
    result.selections.push_back(sel);
  }

  result.clip_count = env.clip_count();
  result.metrics = compute_metrics(result.curve);
  fill_trade_stats(result, static_cast<Index>(env.low_steps_taken()));
  return result;
}

std::string trade_log_csv(const std::vector<TradeRecord>& trades) {
  std::ostringstream out;
  out << "ts,side,size,vwap,cost,fee,position_after,cash_after,net_value\n";
  for (const auto& t : trades) {
    out << t.ts << ',' << (t.side == 'B' ? "buy" : "sell") << ',' << format_double(t.size)
        << ',' << format_double(t.vwap) << ',' << format_double(t.cost) << ','
        << format_double(t.fee) << ',' << format_double(t.position_after) << ','
        << format_double(t.cash_after) << ',' << format_double(t.net_value) << '\n';
  }
  return out.str();
}

std::string equity_csv(const EquityCurve& curve) {
  std::ostringstream out;
  out << "ts,net_value\n";
  for (Index i = 0; i < curve.size(); ++i) {
    out << curve.ts[static_cast<std::size_t>(i)] << ','
        << format_double(curve.value[static_cast<std::size_t>(i)]) << '\n';
  }
  return out.str();
}

std::string selection_csv(const std::vector<SelectionRecord>& selections) {
  std::ostringstream out;
  out << "minute_ts,position_before,label_chosen,reward\n";
  for (const auto& s : selections) {
    out << s.minute_ts << ',' << format_double(s.position_before) << ',' << s.label << ','
        << format_double(s.reward) << '\n';
  }
  return out.str();
}

}  // namespace hft
