#pragma once

#include "hft/pool/chunks.hpp"
#include "hft/pool/kde.hpp"

#include <random>
#include <vector>

namespace hft {

// Fitted chunk-return distribution used by preference sampling.
struct SamplingModel {
  Vec returns;
  double h = 0.0;     // searched KDE bandwidth
  double theta = 0.1;
  double q_lo = 0.0;  // Q_{theta/2}
  double q_hi = 0.0;  // Q_{1-theta/2}

  static SamplingModel fit(const VecRef& returns, double theta);
  double pdf(double r) const { return kde_pdf(r, returns, h); }
};

// exp(beta r) / pdf(r) inside the central quantile band, exp(beta r) outside.
double chunk_priority(double r, double beta, const SamplingModel& model);

Vec chunk_priorities(const std::vector<Chunk>& chunks, double beta, const SamplingModel& model);

// Multinomial draws proportional to non-negative weights.
std::vector<int> sample_indices(const VecRef& weights, int count, std::mt19937_64& rng);

std::vector<int> sample_chunks(const std::vector<Chunk>& chunks, double beta,
                               const SamplingModel& model, int count, std::mt19937_64& rng);

}  // namespace hft
