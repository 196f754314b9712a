#include "hft/learner/value_net.hpp"

#include "hft/io/serde.hpp"

#include <cmath>
#include <random>

namespace hft {

ValueNet::ValueNet(int input_dim, const std::vector<int>& hidden, int output_dim,
                   std::uint64_t seed)
    : input_dim_(input_dim), output_dim_(output_dim) {
  if (input_dim < 1 || output_dim < 1) throw ConfigError("net dims must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<int> dims;
  dims.push_back(input_dim);
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(output_dim);
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const int in = dims[l], out = dims[l + 1];
    if (in < 1 || out < 1) throw ConfigError("net dims must be positive");
    Mat w(out, in);
    const double scale = std::sqrt(2.0 / in);
    for (Index i = 0; i < w.size(); ++i) w.data()[i] = scale * gauss(rng);
    w_.push_back(std::move(w));
    b_.push_back(Vec::Zero(out));
  }
}

Mat ValueNet::forward_batch(const Mat& x, Cache* cache) const {
  if (x.cols() != input_dim_) throw ConfigError("net input dimension mismatch");
  if (cache) {
    cache->input = x;
    cache->z.clear();
    cache->a.clear();
  }
  Mat a = x;
  for (std::size_t l = 0; l < w_.size(); ++l) {
    Mat z = (a * w_[l].transpose()).rowwise() + b_[l].transpose();
    if (l + 1 < w_.size()) {
      a = z.cwiseMax(0.0);
    } else {
      a = z;
    }
    if (cache) {
      cache->z.push_back(std::move(z));
      cache->a.push_back(a);
    }
  }
  return a;
}

Mat ValueNet::forward_batch(const Mat& x) const { return forward_batch(x, nullptr); }

Vec ValueNet::forward(const VecRef& x) const {
  Mat row(1, x.size());
  row.row(0) = x.transpose();
  return forward_batch(row).row(0).transpose();
}

ValueNet::Grads ValueNet::backward(const Cache& cache, const Mat& dloss_dq) const {
  Grads g = zero_grads();
  Mat delta = dloss_dq;
  for (std::size_t l = w_.size(); l-- > 0;) {
    if (l + 1 < w_.size()) {
      // pass back through the next layer's weights, then the ReLU gate
      delta = (delta * w_[l + 1]).cwiseProduct(
          (cache.z[l].array() > 0.0).cast<double>().matrix());
    }
    const Mat& a_prev = l == 0 ? cache.input : cache.a[l - 1];
    g.w[l] = delta.transpose() * a_prev;
    g.b[l] = delta.colwise().sum().transpose();
  }
  return g;
}

ValueNet::Grads ValueNet::zero_grads() const {
  Grads g;
  for (std::size_t l = 0; l < w_.size(); ++l) {
    g.w.push_back(Mat::Zero(w_[l].rows(), w_[l].cols()));
    g.b.push_back(Vec::Zero(b_[l].size()));
  }
  return g;
}

void ValueNet::save(const std::string& path) const {
  BinaryWriter wr;
  wr.magic("VALNET01");
  wr.u64(w_.size());
  for (std::size_t l = 0; l < w_.size(); ++l) {
    wr.u64(static_cast<std::uint64_t>(w_[l].rows()));
    wr.u64(static_cast<std::uint64_t>(w_[l].cols()));
    wr.f64_array(w_[l].data(), static_cast<std::size_t>(w_[l].size()));
    wr.f64_array(b_[l].data(), static_cast<std::size_t>(b_[l].size()));
  }
  wr.to_file(path);
}

ValueNet ValueNet::load(const std::string& path) {
  BinaryReader r = BinaryReader::from_file(path);
  r.expect_magic("VALNET01");
  const std::size_t layers = r.u64();
  ValueNet net;
  for (std::size_t l = 0; l < layers; ++l) {
    const Index rows = static_cast<Index>(r.u64());
    const Index cols = static_cast<Index>(r.u64());
    Mat w(rows, cols);
    r.f64_array(w.data(), static_cast<std::size_t>(w.size()));
    Vec b(rows);
    r.f64_array(b.data(), static_cast<std::size_t>(b.size()));
    net.w_.push_back(std::move(w));
    net.b_.push_back(std::move(b));
  }
  if (net.w_.empty()) throw ArtifactError("checkpoint has no layers: " + path);
  net.input_dim_ = static_cast<int>(net.w_.front().cols());
  net.output_dim_ = static_cast<int>(net.w_.back().rows());
  return net;
}

void soft_update(ValueNet& target, const ValueNet& online, double tau) {
  if (target.layer_count() != online.layer_count()) {
    throw ConfigError("soft_update: layer count mismatch");
  }
  for (std::size_t l = 0; l < target.layer_count(); ++l) {
    target.weights()[l] = tau * online.weights()[l] + (1.0 - tau) * target.weights()[l];
    target.biases()[l] = tau * online.biases()[l] + (1.0 - tau) * target.biases()[l];
  }
}

double max_param_difference(const ValueNet& a, const ValueNet& b) {
  double m = 0.0;
  for (std::size_t l = 0; l < a.layer_count(); ++l) {
    m = std::max(m, (a.weights()[l] - b.weights()[l]).cwiseAbs().maxCoeff());
    m = std::max(m, (a.biases()[l] - b.biases()[l]).cwiseAbs().maxCoeff());
  }
  return m;
}

AdamOptimizer::AdamOptimizer(double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

void AdamOptimizer::step(ValueNet& net, const ValueNet::Grads& grads) {
  if (mw_.empty()) {
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
      mw_.push_back(Mat::Zero(net.weights()[l].rows(), net.weights()[l].cols()));
      vw_.push_back(Mat::Zero(net.weights()[l].rows(), net.weights()[l].cols()));
      mb_.push_back(Vec::Zero(net.biases()[l].size()));
      vb_.push_back(Vec::Zero(net.biases()[l].size()));
    }
  }
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, t_);
  const double c2 = 1.0 - std::pow(beta2_, t_);
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    mw_[l] = beta1_ * mw_[l] + (1.0 - beta1_) * grads.w[l];
    vw_[l] = beta2_ * vw_[l] + (1.0 - beta2_) * grads.w[l].cwiseProduct(grads.w[l]);
    net.weights()[l].array() -=
        lr_ * (mw_[l].array() / c1) / ((vw_[l].array() / c2).sqrt() + eps_);

    mb_[l] = beta1_ * mb_[l] + (1.0 - beta1_) * grads.b[l];
    vb_[l] = beta2_ * vb_[l] + (1.0 - beta2_) * grads.b[l].cwiseProduct(grads.b[l]);
    net.biases()[l].array() -=
        lr_ * (mb_[l].array() / c1) / ((vb_[l].array() / c2).sqrt() + eps_);
  }
}

}  // namespace hft
