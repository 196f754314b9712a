#include "hft/pool/kde.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hft {

namespace {
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * M_PI);
}

double quantile(const VecRef& samples, double q) {
  if (samples.size() == 0) throw DataError("quantile of an empty sample");
  std::vector<double> s(samples.data(), samples.data() + samples.size());
  std::sort(s.begin(), s.end());
  const double pos = q * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= s.size()) return s.back();
  const double frac = pos - static_cast<double>(lo);
  return s[lo] + frac * (s[lo + 1] - s[lo]);
}

double silverman_base(const VecRef& samples) {
  const Index n = samples.size();
  if (n < 2) throw DataError("silverman_base needs at least 2 samples");
  const double mean = samples.mean();
  const double sigma = std::sqrt((samples.array() - mean).square().sum() / (n - 1));
  const double iqr = quantile(samples, 0.75) - quantile(samples, 0.25);

  double spread = 0.0;
  if (sigma > 0.0 && iqr > 0.0) {
    spread = std::min(sigma, iqr / 1.34);
  } else {
    spread = std::max(sigma, iqr / 1.34);
  }
  if (spread <= 0.0) throw DataError("degenerate sample");
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

double kde_pdf(double x, const VecRef& samples, double h) {
  if (h <= 0.0) throw ConfigError("kde bandwidth must be positive");
  if (samples.size() == 0) throw DataError("kde over an empty sample");
  double acc = 0.0;
  for (Index i = 0; i < samples.size(); ++i) {
    const double u = (x - samples[i]) / h;
    acc += std::exp(-0.5 * u * u);
  }
  return acc * kInvSqrt2Pi / (static_cast<double>(samples.size()) * h);
}

double bandwidth_search(const VecRef& samples, double h0) {
  if (h0 <= 0.0) throw ConfigError("bandwidth search needs a positive seed bandwidth");
  const Index n = samples.size();
  if (n < 2) throw DataError("bandwidth search needs at least 2 samples");

  double best_h = h0;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (int k = -2; k <= 2; ++k) {
    const double h = h0 * std::pow(2.0, k);
    double ll = 0.0;
    for (Index i = 0; i < n; ++i) {
      double acc = 0.0;
      for (Index j = 0; j < n; ++j) {
        if (j == i) continue;
        const double u = (samples[i] - samples[j]) / h;
        acc += std::exp(-0.5 * u * u);
      }
      const double pdf = acc * kInvSqrt2Pi / (static_cast<double>(n - 1) * h);
      ll += pdf > 0.0 ? std::log(pdf) : -std::numeric_limits<double>::infinity();
    }
    if (ll > best_ll) {
      best_ll = ll;
      best_h = h;
    }
  }
  return best_h;
}

}  // namespace hft
