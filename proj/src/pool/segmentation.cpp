#include "hft/pool/segmentation.hpp"

#include "hft/pool/kde.hpp"

#include <cmath>
#include <vector>

namespace hft {

double dtw_distance(const VecRef& a, const VecRef& b) {
  if (a.size() == 0 || b.size() == 0) throw DataError("dtw: empty sequence");
  const Index n = a.size(), m = b.size();
  Vec prev(m), cur(m);
  for (Index j = 0; j < m; ++j) {
    prev[j] = std::abs(a[0] - b[j]) + (j > 0 ? prev[j - 1] : 0.0);
  }
  for (Index i = 1; i < n; ++i) {
    cur[0] = std::abs(a[i] - b[0]) + prev[0];
    for (Index j = 1; j < m; ++j) {
      cur[j] = std::abs(a[i] - b[j]) + std::min({prev[j], cur[j - 1], prev[j - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

Vec lowpass_filter(const VecRef& x, int window) {
  if (window < 1 || window % 2 == 0) throw ConfigError("filter window must be odd and >= 1");
  const Index n = x.size();
  const int half = window / 2;
  Vec out(n);
  for (Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = -half; k <= half; ++k) {
      const Index j = std::clamp<Index>(i + k, 0, n - 1);  // edge repetition
      acc += x[j];
    }
    out[i] = acc / window;
  }
  return out;
}

Vec resample_linear(const VecRef& x, int points) {
  if (points < 2) throw ConfigError("resample needs at least 2 points");
  const Index n = x.size();
  Vec out(points);
  if (n == 1) {
    out.setConstant(x[0]);
    return out;
  }
  for (int k = 0; k < points; ++k) {
    const double pos = static_cast<double>(k) * static_cast<double>(n - 1) / (points - 1);
    const Index lo = static_cast<Index>(std::floor(pos));
    if (lo + 1 >= n) {
      out[k] = x[n - 1];
    } else {
      const double frac = pos - static_cast<double>(lo);
      out[k] = x[lo] + frac * (x[lo + 1] - x[lo]);
    }
  }
  return out;
}

namespace {

double segment_slope(const VecRef& closes, Index begin, Index end) {
  const Index len = end - begin;
  if (len < 2) return 0.0;
  const double net_end = closes[end - 1] / closes[begin];
  return (net_end - 1.0) / static_cast<double>(len - 1);
}

Vec segment_net_curve(const VecRef& closes, Index begin, Index end, int points) {
  Vec net(end - begin);
  for (Index i = begin; i < end; ++i) net[i - begin] = closes[i] / closes[begin];
  return resample_linear(net, points);
}

int band_label(double r, double lo, double hi, int m) {
  if (r > hi) return m;
  if (r <= lo) return 1;
  // left-open right-closed bands between the quantile thresholds
  const double step = (hi - lo) / (m - 2);
  for (int j = 2; j <= m - 1; ++j) {
    if (r <= lo + (j - 1) * step) return j;
  }
  return m - 1;
}

}  // namespace

std::vector<Segment> segment_and_label(const VecRef& minute_closes,
                                       const SegmentationParams& params) {
  const Index n = minute_closes.size();
  if (params.n_labels < 3) throw ConfigError("label count M must be >= 3");
  if (n <= params.filter_window) {
    throw ConfigError("series shorter than the low-pass filter window");
  }

  const Vec filtered = lowpass_filter(minute_closes, params.filter_window);

  // Split at strict extrema of the filtered curve.
  std::vector<Index> bounds;
  bounds.push_back(0);
  for (Index i = 1; i + 1 < n; ++i) {
    const double d0 = filtered[i] - filtered[i - 1];
    const double d1 = filtered[i + 1] - filtered[i];
    if (d0 * d1 < 0.0) bounds.push_back(i);
  }
  bounds.push_back(n);

  std::vector<Segment> segments;
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    Segment s;
    s.begin = bounds[k];
    s.end = bounds[k + 1];
    s.slope = segment_slope(minute_closes, s.begin, s.end);
    segments.push_back(s);
  }

  // Merge adjacent segments while both slope and shape are close.
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t i = 0;
    while (i + 1 < segments.size()) {
      Segment& s1 = segments[i];
      const Segment& s2 = segments[i + 1];
      const double slope_gap = std::abs(s1.slope - s2.slope);
      bool merge = slope_gap <= params.slope_tol;
      if (merge) {
        const Vec c1 = segment_net_curve(minute_closes, s1.begin, s1.end, params.resample_points);
        const Vec c2 = segment_net_curve(minute_closes, s2.begin, s2.end, params.resample_points);
        merge = dtw_distance(c1, c2) <= params.dtw_tol;
      }
      if (merge) {
        s1.end = s2.end;
        s1.slope = segment_slope(minute_closes, s1.begin, s1.end);
        segments.erase(segments.begin() + static_cast<std::ptrdiff_t>(i + 1));
        changed = true;
      } else {
        ++i;
      }
    }
  }

  Vec slopes(static_cast<Index>(segments.size()));
  for (Index i = 0; i < slopes.size(); ++i) slopes[i] = segments[static_cast<std::size_t>(i)].slope;
  const double lo = quantile(slopes, params.theta / 2.0);
  const double hi = quantile(slopes, 1.0 - params.theta / 2.0);
  const int m = params.n_labels;

  for (auto& s : segments) {
    if (hi <= lo) {
      // Quantile collapse (e.g. a single segment): banding is undefined, so
      // fall back on the slope sign alone.
      if (s.slope > 0.0) {
        s.label = m;
      } else if (s.slope < 0.0) {
        s.label = 1;
      } else {
        s.label = (m + 1) / 2;
      }
    } else {
      s.label = band_label(s.slope, lo, hi, m);
    }
  }
  return segments;
}

std::string label_name(int label, int n_labels) {
  if (n_labels == 5) {
    switch (label) {
      case 1: return "bear";
      case 2: return "pullback";
      case 3: return "sideways";
      case 4: return "rally";
      case 5: return "bull";
      default: break;
    }
  }
  return "label_" + std::to_string(label);
}

}  // namespace hft
