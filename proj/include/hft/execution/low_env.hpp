#pragma once

#include "hft/execution/execution.hpp"
#include "hft/marketdata/features.hpp"
#include "hft/types.hpp"

namespace hft {

struct LowStepResult {
  Vec state;  // observation after the step (empty once done)
  double reward = 0.0;
  bool done = false;
  bool clipped = false;
  StepOutcome outcome;
};

// Second-level trading environment. Decisions run at t = begin .. end-2; the
// final position is marked at the last best bid, so episode reward telescopes
// to the net-value change exactly.
class LowLevelEnv {
 public:
  LowLevelEnv(const MarketSeries& series, const Mat& features, ActionGrid grid,
              double fee_rate, Index begin, Index end, double initial_cash);

  void reset(int initial_pos_index = 0);
  Vec state() const;
  LowStepResult step(int target_index);
  bool done() const { return cursor_ >= end_ - 1; }

  Index cursor() const { return cursor_; }
  Index begin() const { return begin_; }
  Index end() const { return end_; }
  Index horizon() const { return end_ - begin_ - 1; }  // decisions per episode
  int position_index() const { return grid_.nearest_index(account_.position); }
  const AccountState& account() const { return account_; }
  const ActionGrid& grid() const { return grid_; }
  const MarketSeries& series() const { return *series_; }
  long clip_count() const { return clip_count_; }
  double initial_cash() const { return initial_cash_; }
  double net_value_now() const { return net_value(account_, series_->lob(cursor_)); }

  static Vec make_state(const Mat& features, Index t, double position, const ActionGrid& grid);

 private:
  const MarketSeries* series_;
  const Mat* features_;
  ActionGrid grid_;
  Index begin_;
  Index end_;
  double initial_cash_;
  Index cursor_ = 0;
  AccountState account_;
  long clip_count_ = 0;
};

}  // namespace hft
