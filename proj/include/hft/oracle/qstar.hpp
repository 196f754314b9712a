#pragma once

#include "hft/execution/low_env.hpp"
#include "hft/learner/replay.hpp"
#include "hft/types.hpp"

#include <string>
#include <vector>

namespace hft {

// Optimal action-value tensor over a series slice: values[t](p, a) is the best
// achievable remaining reward when holding grid position p at step t and
// moving to position a now. Terminal row is zero; infeasible fills are -inf.
struct QStarTable {
  Index n = 0;  // steps including the terminal row
  ActionGrid grid;
  double fee_rate = 0.0;
  Index series_begin = 0;  // absolute series index of t = 0
  std::vector<Mat> values;

  double q(Index t, int p, int a) const { return values[static_cast<std::size_t>(t)](p, a); }
  Vec row(Index t, int p) const { return values[static_cast<std::size_t>(t)].row(p).transpose(); }
  int greedy_action(Index t, int p) const;
  double optimal_value(Index t, int p) const;  // max_a Q*[t,p,a]

  void save(const std::string& path) const;  // binary + JSON sidecar at path + ".json"
  static QStarTable load(const std::string& path);
};

// Backward recursion over seconds [begin, end) of the series.
QStarTable build_q_star(const MarketSeries& series, Index begin, Index end,
                        const ActionGrid& grid, double fee_rate);

// Greedy trajectory under Q*; transitions carry the teacher row of each state.
std::vector<Transition> optimal_rollout(const QStarTable& qstar, LowLevelEnv& env);

// Centered teacher row: Q*[t,p,.] minus its mean.
Vec regularizer_row(const QStarTable& qstar, Index t, int p);

}  // namespace hft
