#include "hft/pool/sampling.hpp"

#include <cmath>

namespace hft {

SamplingModel SamplingModel::fit(const VecRef& returns, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("theta must lie in (0,1)");
  SamplingModel m;
  m.returns = returns;
  m.theta = theta;
  m.h = bandwidth_search(returns, silverman_base(returns));
  m.q_lo = quantile(returns, theta / 2.0);
  m.q_hi = quantile(returns, 1.0 - theta / 2.0);
  return m;
}

double chunk_priority(double r, double beta, const SamplingModel& model) {
  const double boost = std::exp(beta * r);
  if (r >= model.q_lo && r <= model.q_hi) {
    const double d = model.pdf(r);
    if (d <= 0.0) throw std::logic_error("KDE density vanished inside the quantile band");
    return boost / d;
  }
  return boost;
}

Vec chunk_priorities(const std::vector<Chunk>& chunks, double beta, const SamplingModel& model) {
  Vec w(static_cast<Index>(chunks.size()));
  for (Index i = 0; i < w.size(); ++i) {
    w[i] = chunk_priority(chunks[static_cast<std::size_t>(i)].ret, beta, model);
  }
  return w;
}

std::vector<int> sample_indices(const VecRef& weights, int count, std::mt19937_64& rng) {
  if (weights.size() == 0) throw ConfigError("sampling from an empty weight vector");
  Vec cumulative(weights.size());
  double acc = 0.0;
  for (Index i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw ConfigError("sampling weights must be finite and non-negative");
    }
    acc += weights[i];
    cumulative[i] = acc;
  }
  if (acc <= 0.0) throw ConfigError("sampling weights sum to zero");

  std::uniform_real_distribution<double> uni(0.0, acc);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double u = uni(rng);
    Index lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
      const Index midpoint = (lo + hi) / 2;
      if (cumulative[midpoint] < u) {
        lo = midpoint + 1;
      } else {
        hi = midpoint;
      }
    }
    out.push_back(static_cast<int>(lo));
  }
  return out;
}

std::vector<int> sample_chunks(const std::vector<Chunk>& chunks, double beta,
                               const SamplingModel& model, int count, std::mt19937_64& rng) {
  return sample_indices(chunk_priorities(chunks, beta, model), count, rng);
}

}  // namespace hft
