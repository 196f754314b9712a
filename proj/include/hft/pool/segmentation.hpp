#pragma once

#include "hft/types.hpp"

#include <string>
#include <vector>

namespace hft {

// Classic dynamic-programming DTW with absolute-difference local cost and
// (up, left, diagonal) steps.
double dtw_distance(const VecRef& a, const VecRef& b);

// Centered moving average, edges padded by repetition. Window must be odd.
Vec lowpass_filter(const VecRef& x, int window);

// Linear resampling of x onto `points` equally spaced positions.
Vec resample_linear(const VecRef& x, int points);

struct Segment {
  Index begin = 0;  // minute index, half-open [begin, end)
  Index end = 0;
  double slope = 0.0;  // per-minute slope of the buy-and-hold net curve
  int label = 0;       // 1..M once labelled
};

struct SegmentationParams {
  int filter_window = 61;
  double slope_tol = 2.5e-4;  // per-minute net-curve slope difference for merging
  double dtw_tol = 2.0;       // DTW between normalized 64-point net curves
  int resample_points = 64;
  double theta = 0.1;
  int n_labels = 5;  // M
};

// Split the filtered minute-close curve at its extrema, merge adjacent
// segments with similar slope and shape until stable, then label 1..M by
// slope quantile bands (1 = steepest bear, M = steepest bull).
std::vector<Segment> segment_and_label(const VecRef& minute_closes,
                                       const SegmentationParams& params);

std::string label_name(int label, int n_labels);

}  // namespace hft
