#pragma once

#include "hft/marketdata/lob.hpp"
#include "hft/types.hpp"

#include <vector>

namespace hft {

struct InsufficientDepthError : std::runtime_error {
  double fillable;  // base units executable before the side ran out
  InsufficientDepthError(const std::string& msg, double fillable_size)
      : std::runtime_error(msg), fillable(fillable_size) {}
};

struct AccountState {
  double cash = 0.0;
  double position = 0.0;  // base units, long only
  double fee_rate = 0.0;
};

// Uniform target-position ladder {0, H/(n-1), ..., H}.
class ActionGrid {
 public:
  ActionGrid() : ActionGrid(1.0, 2) {}
  ActionGrid(double max_position, int n_actions);

  double max_position() const { return max_position_; }
  int n_actions() const { return n_actions_; }
  const std::vector<double>& positions() const { return positions_; }
  double position(int idx) const { return positions_[static_cast<std::size_t>(idx)]; }
  int nearest_index(double pos) const;

 private:
  double max_position_;
  int n_actions_;
  std::vector<double> positions_;
};

struct Fill {
  double signed_size = 0.0;  // +buy / -sell
  double cost = 0.0;         // signed quote amount including fee; Δcash = -cost
  double vwap = 0.0;         // pre-fee average price, always positive
  double fee_paid = 0.0;
  int levels_consumed = 0;
};

// Walks the opposite side best-first (buys lift asks, sells hit bids).
// Fees scale buy cost by (1 + fee) and sell proceeds by (1 - fee).
// Throws InsufficientDepthError when the side cannot absorb the size.
Fill execute_market_order(const LobSnapshot& lob, double signed_size, double fee_rate);

struct ClippedFill {
  Fill fill;
  bool clipped = false;
};

// Same walk, but clips to the available depth instead of throwing.
ClippedFill execute_market_order_clipped(const LobSnapshot& lob, double signed_size,
                                         double fee_rate);

// cash + position marked at the best bid
double net_value(const AccountState& account, const LobSnapshot& lob);

struct StepOutcome {
  double reward = 0.0;
  bool traded = false;
  bool clipped = false;
  Fill fill;
};

// One second of trading: move toward target_position at lob[t], then mark the
// move from bid[t] to bid[t+1]. Mutates the account; t+1 must be in range.
StepOutcome step_account(const MarketSeries& series, AccountState& account, Index t,
                         double target_position);

}  // namespace hft
