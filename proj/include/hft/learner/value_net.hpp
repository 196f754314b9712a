#pragma once

#include "hft/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hft {

// Fully connected rectified-linear MLP with explicit gradients. Batches are
// row-major (one sample per row).
class ValueNet {
 public:
  struct Grads {
    std::vector<Mat> w;
    std::vector<Vec> b;
  };

  struct Cache {
    Mat input;
    std::vector<Mat> z;  // pre-activations per layer
    std::vector<Mat> a;  // post-activations per layer
  };

  ValueNet() = default;
  ValueNet(int input_dim, const std::vector<int>& hidden, int output_dim, std::uint64_t seed);

  int input_dim() const { return input_dim_; }
  int output_dim() const { return output_dim_; }
  std::size_t layer_count() const { return w_.size(); }

  Vec forward(const VecRef& x) const;
  Mat forward_batch(const Mat& x) const;
  Mat forward_batch(const Mat& x, Cache* cache) const;

  // dloss_dq: gradient of the scalar loss w.r.t. the network output rows.
  Grads backward(const Cache& cache, const Mat& dloss_dq) const;

  Grads zero_grads() const;

  std::vector<Mat>& weights() { return w_; }
  std::vector<Vec>& biases() { return b_; }
  const std::vector<Mat>& weights() const { return w_; }
  const std::vector<Vec>& biases() const { return b_; }

  void save(const std::string& path) const;
  static ValueNet load(const std::string& path);

 private:
  int input_dim_ = 0;
  int output_dim_ = 0;
  std::vector<Mat> w_;  // (out x in) per layer
  std::vector<Vec> b_;
};

// target <- tau * online + (1 - tau) * target, elementwise
void soft_update(ValueNet& target, const ValueNet& online, double tau);

double max_param_difference(const ValueNet& a, const ValueNet& b);

class AdamOptimizer {
 public:
  explicit AdamOptimizer(double lr, double beta1 = 0.9, double beta2 = 0.999,
                         double eps = 1e-8);
  void step(ValueNet& net, const ValueNet::Grads& grads);

 private:
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
  std::vector<Mat> mw_, vw_;
  std::vector<Vec> mb_, vb_;
};

}  // namespace hft
