#pragma once

#include "hft/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <vector>

namespace hft {

inline constexpr double kSecondsPerYear = 31'536'000.0;

struct EquityCurve {
  std::vector<std::int64_t> ts;
  std::vector<double> value;

  Index size() const { return static_cast<Index>(value.size()); }
  Vec returns() const;  // per-step simple returns, defined from the 2nd point
};

struct MetricsReport {
  double tr = 0.0;    // total return
  double avol = 0.0;  // annualized volatility
  double mdd = 0.0;   // maximum drawdown, in [0, 1]
  double asr = 0.0;   // annualized Sharpe
  double acr = 0.0;   // annualized Calmar
  double asor = 0.0;  // annualized Sortino
  bool asr_defined = true;   // false when sigma[ret] = 0
  bool acr_defined = true;   // false when MDD = 0
  bool asor_defined = true;  // false when there are no negative returns
  long trade_count = 0;
  double avg_holding_s = 0.0;

  nlohmann::json to_json() const;
};

MetricsReport compute_metrics(const EquityCurve& curve);

}  // namespace hft
