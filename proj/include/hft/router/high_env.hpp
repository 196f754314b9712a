#pragma once

#include "hft/execution/execution.hpp"
#include "hft/marketdata/features.hpp"
#include "hft/pool/agent_pool.hpp"

#include <functional>

namespace hft {

// Minute-level dispatch environment: one step picks a pool agent from the
// column matching the live position and runs it for exactly 60 seconds.
class HighLevelEnv {
 public:
  // Called once per traded second; used by backtests for equity/trade logs.
  using SecondHook =
      std::function<void(Index t, const AccountState& after, const StepOutcome& outcome)>;

  HighLevelEnv(const MarketSeries& series, const Mat& low_features, const Mat& high_features,
               const AgentPool& pool, double fee_rate, Index minute_begin, Index minute_end,
               double initial_cash);

  void reset(int initial_pos_index = 0);
  Vec state() const;

  struct HighStep {
    Vec state;
    double reward = 0.0;
    bool done = false;
    int dispatched_pos_index = 0;
    long clipped = 0;
  };
  HighStep step(int label_index);  // 0-based label choice

  bool done() const { return minute_cursor_ >= minute_end_; }
  Index minute_cursor() const { return minute_cursor_; }
  Index minute_begin() const { return minute_begin_; }
  Index minute_end() const { return minute_end_; }
  Index horizon() const { return minute_end_ - minute_begin_; }
  const AccountState& account() const { return account_; }
  const AgentPool& pool() const { return *pool_; }
  long low_steps_taken() const { return low_steps_; }
  long clip_count() const { return clip_count_; }
  double net_value_now() const;
  int position_index() const { return pool_->grid().nearest_index(account_.position); }

  void set_second_hook(SecondHook hook) { hook_ = std::move(hook); }

 private:
  const MarketSeries* series_;
  const Mat* low_features_;
  const Mat* high_features_;
  const AgentPool* pool_;
  Index minute_begin_;
  Index minute_end_;
  double initial_cash_;
  Index minute_cursor_ = 0;
  AccountState account_;
  long low_steps_ = 0;
  long clip_count_ = 0;
  SecondHook hook_;
};

}  // namespace hft
