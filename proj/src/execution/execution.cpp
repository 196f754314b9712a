#include "hft/execution/execution.hpp"

#include <cmath>

namespace hft {

namespace {
constexpr double kSizeEps = 1e-12;

Fill walk_book(const std::vector<BookLevel>& side, double size, double fee_rate,
               bool buy, bool clip, bool* clipped) {
  double remaining = size;
  double notional = 0.0;
  int levels = 0;
  for (const auto& level : side) {
    if (remaining <= kSizeEps) break;
    const double take = std::min(level.qty, remaining);
    notional += level.price * take;
    remaining -= take;
    ++levels;
  }
  if (remaining > kSizeEps) {
    if (!clip) {
      throw InsufficientDepthError("insufficient depth: " + std::to_string(size - remaining) +
                                       " of " + std::to_string(size) + " fillable",
                                   size - remaining);
    }
    if (clipped) *clipped = true;
  }
  const double executed = size - std::max(remaining, 0.0);
  Fill f;
  f.signed_size = buy ? executed : -executed;
  f.vwap = executed > 0.0 ? notional / executed : 0.0;
  f.fee_paid = notional * fee_rate;
  f.cost = buy ? notional * (1.0 + fee_rate) : -notional * (1.0 - fee_rate);
  f.levels_consumed = levels;
  return f;
}

}  // namespace

ActionGrid::ActionGrid(double max_position, int n_actions)
    : max_position_(max_position), n_actions_(n_actions) {
  if (max_position <= 0.0) throw ConfigError("grid: max position must be positive");
  if (n_actions < 2) throw ConfigError("grid: need at least 2 actions");
  positions_.resize(static_cast<std::size_t>(n_actions));
  for (int i = 0; i < n_actions; ++i) {
    positions_[static_cast<std::size_t>(i)] = max_position * i / (n_actions - 1);
  }
}

int ActionGrid::nearest_index(double pos) const {
  const double step = max_position_ / (n_actions_ - 1);
  const int idx = static_cast<int>(std::lround(pos / step));
  return std::clamp(idx, 0, n_actions_ - 1);
}

Fill execute_market_order(const LobSnapshot& lob, double signed_size, double fee_rate) {
  if (std::abs(signed_size) <= kSizeEps) throw ConfigError("order size must be non-zero");
  if (fee_rate < 0.0) throw ConfigError("fee rate must be >= 0");
  const bool buy = signed_size > 0.0;
  return walk_book(buy ? lob.asks : lob.bids, std::abs(signed_size), fee_rate, buy,
                   /*clip=*/false, nullptr);
}

ClippedFill execute_market_order_clipped(const LobSnapshot& lob, double signed_size,
                                         double fee_rate) {
  ClippedFill out;
  if (std::abs(signed_size) <= kSizeEps) return out;
  const bool buy = signed_size > 0.0;
  out.fill = walk_book(buy ? lob.asks : lob.bids, std::abs(signed_size), fee_rate, buy,
                       /*clip=*/true, &out.clipped);
  return out;
}

double net_value(const AccountState& account, const LobSnapshot& lob) {
  return account.cash + account.position * lob.best_bid();
}

StepOutcome step_account(const MarketSeries& series, AccountState& account, Index t,
                         double target_position) {
  StepOutcome out;
  const double prev_position = account.position;
  const double delta = target_position - prev_position;
  double cost = 0.0;
  if (std::abs(delta) > kSizeEps) {
    ClippedFill cf = execute_market_order_clipped(series.lob(t), delta, account.fee_rate);
    account.position += cf.fill.signed_size;
    account.cash -= cf.fill.cost;
    cost = cf.fill.cost;
    out.traded = std::abs(cf.fill.signed_size) > kSizeEps;
    out.clipped = cf.clipped;
    out.fill = cf.fill;
  }
  out.reward = account.position * series.best_bid(t + 1) -
               (prev_position * series.best_bid(t) + cost);
  return out;
}

}  // namespace hft
