#pragma once

#include "hft/types.hpp"

namespace hft {

// Type-7 linear-interpolation quantile on a copy of the samples.
double quantile(const VecRef& samples, double q);

// 0.9 * min(sigma, IQR/1.34) * n^(-1/5); zero-spread candidates are skipped.
// Throws DataError("degenerate sample") when every sample is identical.
double silverman_base(const VecRef& samples);

// Maximizes leave-one-out log likelihood over {h0 * 2^k, k = -2..2}.
double bandwidth_search(const VecRef& samples, double h0);

// Gaussian-kernel density estimate: (1/nh) sum K((x - r)/h).
double kde_pdf(double x, const VecRef& samples, double h);

}  // namespace hft
