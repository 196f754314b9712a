#include "hft/backtest/policies.hpp"

#include "hft/marketdata/indicators.hpp"

#include <cmath>

namespace hft {

namespace {

int hold_index(double pos_norm, int n_actions) {
  return std::clamp(static_cast<int>(std::lround(pos_norm * (n_actions - 1))), 0,
                    n_actions - 1);
}

class MacdPolicy final : public LowPolicy {
 public:
  MacdPolicy(const MarketSeries& series, int span_short, int span_mid, int span_long,
             int n_actions, double band)
      : n_actions_(n_actions), band_(band) {
    Vec mids(series.n());
    for (Index t = 0; t < series.n(); ++t) mids[t] = series.mid(t);
    const MacdResult r = macd(mids, span_short, span_mid, span_long);
    dif_ = r.dif;
    macd_ = r.macd;
  }

  int act(Index t, const VecRef&, double pos_norm) const override {
    if (macd_[t] > band_ && dif_[t] > band_) return n_actions_ - 1;
    if (macd_[t] < -band_ && dif_[t] < -band_) return 0;
    return hold_index(pos_norm, n_actions_);
  }

 private:
  int n_actions_;
  double band_;
  Vec dif_;
  Vec macd_;
};

class IvPolicy final : public LowPolicy {
 public:
  IvPolicy(const MarketSeries& series, int levels, double lower, double upper, int n_actions)
      : n_actions_(n_actions), lower_(lower), upper_(upper) {
    if (!(lower < upper)) throw ConfigError("iv_strategy: lower must be < upper");
    imb_.resize(series.n());
    for (Index t = 0; t < series.n(); ++t) {
      const auto& lob = series.lob(t);
      const int avail = static_cast<int>(std::min(lob.bids.size(), lob.asks.size()));
      imb_[t] = imbalance(lob, std::min(levels, avail));
    }
  }

  int act(Index t, const VecRef&, double pos_norm) const override {
    if (imb_[t] < lower_) return n_actions_ - 1;  // resting size piles on the bid
    if (imb_[t] > upper_) return 0;
    return hold_index(pos_norm, n_actions_);
  }

 private:
  int n_actions_;
  double lower_;
  double upper_;
  Vec imb_;
};

}  // namespace

std::shared_ptr<LowPolicy> macd_strategy(const MarketSeries& series, int span_short,
                                         int span_mid, int span_long, int n_actions,
                                         double band) {
  return std::make_shared<MacdPolicy>(series, span_short, span_mid, span_long, n_actions, band);
}

std::shared_ptr<LowPolicy> iv_strategy(const MarketSeries& series, int levels, double lower,
                                       double upper, int n_actions) {
  return std::make_shared<IvPolicy>(series, levels, lower, upper, n_actions);
}

std::shared_ptr<LowPolicy> buy_and_hold(int n_actions) {
  return std::make_shared<ConstantPolicy>(n_actions - 1);
}

std::shared_ptr<LowPolicy> always_flat() { return std::make_shared<ConstantPolicy>(0); }

}  // namespace hft
