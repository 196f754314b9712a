#include "hft/router/high_env.hpp"

namespace hft {

HighLevelEnv::HighLevelEnv(const MarketSeries& series, const Mat& low_features,
                           const Mat& high_features, const AgentPool& pool, double fee_rate,
                           Index minute_begin, Index minute_end, double initial_cash)
    : series_(&series),
      low_features_(&low_features),
      high_features_(&high_features),
      pool_(&pool),
      minute_begin_(minute_begin),
      minute_end_(minute_end),
      initial_cash_(initial_cash) {
  if (series.start_ts() % 60 != 0) {
    throw ConfigError("high-level env needs a minute-aligned series start");
  }
  if (minute_begin < kFeatureWindow) {
    throw ConfigError("minute episode must start at or after the warm-up window");
  }
  const Index max_end = (series.n() - 1) / 60;  // final low step needs t+1 in range
  if (minute_end > max_end || minute_begin >= minute_end) {
    throw ConfigError("invalid minute episode bounds");
  }
  if (high_features.rows() < minute_end) {
    throw ConfigError("high feature matrix does not cover the episode");
  }
  account_.fee_rate = fee_rate;
  reset(0);
}

void HighLevelEnv::reset(int initial_pos_index) {
  minute_cursor_ = minute_begin_;
  account_.cash = initial_cash_;
  account_.position = pool_->grid().position(initial_pos_index);
  low_steps_ = 0;
  clip_count_ = 0;
}

Vec HighLevelEnv::state() const {
  // Features of the last completed minute bar plus the position encoding.
  const Mat& hf = *high_features_;
  Vec s(hf.cols() + 1);
  s.head(hf.cols()) = hf.row(minute_cursor_ - 1).transpose();
  s[hf.cols()] = account_.position / pool_->grid().max_position();
  return s;
}

double HighLevelEnv::net_value_now() const {
  return net_value(account_, series_->lob(minute_cursor_ * 60));
}

HighLevelEnv::HighStep HighLevelEnv::step(int label_index) {
  if (done()) throw ConfigError("step on a finished high-level episode");
  if (label_index < 0 || label_index >= pool_->m()) {
    throw ConfigError("label choice outside the pool");
  }
  const int pos_idx = position_index();
  const PoolCell& cell = pool_->cell(label_index, pos_idx);

  HighStep out;
  out.dispatched_pos_index = pos_idx;

  const Index second_begin = minute_cursor_ * 60;
  const ActionGrid& grid = pool_->grid();
  for (Index t = second_begin; t < second_begin + 60; ++t) {
    const int target = cell.policy->act(t, low_features_->row(t).transpose(),
                                        account_.position / grid.max_position());
    const StepOutcome step_out =
        step_account(*series_, account_, t, grid.position(target));
    out.reward += step_out.reward;
    if (step_out.clipped) {
      ++out.clipped;
      ++clip_count_;
    }
    ++low_steps_;
    if (hook_) hook_(t, account_, step_out);
  }

  ++minute_cursor_;
  out.done = done();
  if (!out.done) out.state = state();
  return out;
}

}  // namespace hft
