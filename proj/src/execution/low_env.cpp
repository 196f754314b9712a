#include "hft/execution/low_env.hpp"

namespace hft {

LowLevelEnv::LowLevelEnv(const MarketSeries& series, const Mat& features, ActionGrid grid,
                         double fee_rate, Index begin, Index end, double initial_cash)
    : series_(&series),
      features_(&features),
      grid_(grid),
      begin_(begin),
      end_(end),
      initial_cash_(initial_cash) {
  if (begin < kFeatureWindow) {
    throw ConfigError("episode must start at or after the feature warm-up window");
  }
  if (end > series.n() || begin >= end) throw ConfigError("invalid episode bounds");
  if (features.rows() != series.n()) throw ConfigError("feature matrix does not match series");
  account_.fee_rate = fee_rate;
  reset(0);
}

void LowLevelEnv::reset(int initial_pos_index) {
  cursor_ = begin_;
  account_.cash = initial_cash_;
  account_.position = grid_.position(initial_pos_index);
  clip_count_ = 0;
}

Vec LowLevelEnv::make_state(const Mat& features, Index t, double position,
                            const ActionGrid& grid) {
  Vec s(features.cols() + 1);
  s.head(features.cols()) = features.row(t).transpose();
  s[features.cols()] = position / grid.max_position();  // == grid index / (|A|-1) on-grid
  return s;
}

Vec LowLevelEnv::state() const {
  return make_state(*features_, cursor_, account_.position, grid_);
}

LowStepResult LowLevelEnv::step(int target_index) {
  if (done()) throw ConfigError("step on a finished episode");
  if (target_index < 0 || target_index >= grid_.n_actions()) {
    throw ConfigError("target index out of grid range");
  }
  LowStepResult r;
  r.outcome = step_account(*series_, account_, cursor_, grid_.position(target_index));
  r.reward = r.outcome.reward;
  r.clipped = r.outcome.clipped;
  if (r.clipped) ++clip_count_;
  ++cursor_;
  r.done = done();
  if (!r.done) r.state = state();
  return r;
}

}  // namespace hft
