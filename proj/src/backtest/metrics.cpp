#include "hft/backtest/metrics.hpp"

#include <cmath>

namespace hft {

Vec EquityCurve::returns() const {
  if (size() < 2) throw DataError("equity curve needs at least 2 points");
  Vec r(size() - 1);
  for (Index i = 1; i < size(); ++i) {
    r[i - 1] = value[static_cast<std::size_t>(i)] / value[static_cast<std::size_t>(i - 1)] - 1.0;
  }
  return r;
}

MetricsReport compute_metrics(const EquityCurve& curve) {
  if (curve.size() < 2) throw DataError("equity curve needs at least 2 points");
  MetricsReport rep;
  const double v0 = curve.value.front();
  const double vt = curve.value.back();
  rep.tr = (vt - v0) / v0;

  const Vec ret = curve.returns();
  const double mean = ret.mean();
  const double var = (ret.array() - mean).square().sum() / ret.size();
  const double sigma = std::sqrt(var);
  const double root_m = std::sqrt(kSecondsPerYear);

  rep.avol = sigma * root_m;

  double peak = curve.value.front();
  double mdd = 0.0;
  for (double v : curve.value) {
    peak = std::max(peak, v);
    mdd = std::max(mdd, (peak - v) / peak);
  }
  rep.mdd = mdd;

  if (sigma > 0.0) {
    rep.asr = mean / sigma * root_m;
  } else {
    rep.asr = 0.0;
    rep.asr_defined = false;
  }

  if (mdd > 0.0) {
    rep.acr = mean / mdd * kSecondsPerYear;
  } else {
    rep.acr = 0.0;
    rep.acr_defined = false;
  }

  // downside deviation over the negative returns only
  double neg_sq = 0.0;
  long neg_n = 0;
  double neg_mean = 0.0;
  for (Index i = 0; i < ret.size(); ++i) {
    if (ret[i] < 0.0) {
      neg_mean += ret[i];
      ++neg_n;
    }
  }
  if (neg_n > 0) {
    neg_mean /= static_cast<double>(neg_n);
    for (Index i = 0; i < ret.size(); ++i) {
      if (ret[i] < 0.0) {
        const double d = ret[i] - neg_mean;
        neg_sq += d * d;
      }
    }
  }
  const double dd = neg_n > 0 ? std::sqrt(neg_sq / static_cast<double>(neg_n)) : 0.0;
  if (dd > 0.0) {
    rep.asor = mean * root_m / dd;
  } else {
    rep.asor = 0.0;
    rep.asor_defined = false;
  }
  return rep;
}

nlohmann::json MetricsReport::to_json() const {
  return {{"tr", tr},
          {"avol", avol},
          {"mdd", mdd},
          {"asr", asr},
          {"acr", acr},
          {"asor", asor},
          {"asr_defined", asr_defined},
          {"acr_defined", acr_defined},
          {"asor_defined", asor_defined},
          {"trade_count", trade_count},
          {"avg_holding_s", avg_holding_s}};
}

}  // namespace hft
