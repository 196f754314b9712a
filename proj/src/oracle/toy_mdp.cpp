#include "hft/oracle/toy_mdp.hpp"

#include <cmath>
#include <random>

namespace hft {

void ToyMdp::validate() const {
  if (n_states < 1 || n_actions < 1) throw ConfigError("toy MDP needs states and actions");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("toy MDP gamma must lie in (0,1)");
  if (static_cast<int>(transition.size()) != n_actions ||
      static_cast<int>(reward.size()) != n_actions) {
    throw ConfigError("toy MDP tensor shape mismatch");
  }
  for (const Mat& t : transition) {
    if (t.rows() != n_states || t.cols() != n_states) {
      throw ConfigError("toy MDP transition shape mismatch");
    }
    for (Index x = 0; x < n_states; ++x) {
      if (std::abs(t.row(x).sum() - 1.0) > 1e-12) {
        throw ConfigError("toy MDP transition row does not sum to 1");
      }
    }
  }
}

ToyMdp ToyMdp::random(int n_states, int n_actions, double gamma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  ToyMdp mdp;
  mdp.n_states = n_states;
  mdp.n_actions = n_actions;
  mdp.gamma = gamma;
  mdp.transition.resize(static_cast<std::size_t>(n_actions));
  mdp.reward.resize(static_cast<std::size_t>(n_actions));
  for (int a = 0; a < n_actions; ++a) {
    Mat t(n_states, n_states), r(n_states, n_states);
    for (Index x = 0; x < n_states; ++x) {
      double row_sum = 0.0;
      for (Index y = 0; y < n_states; ++y) {
        t(x, y) = uni(rng) + 1e-3;
        row_sum += t(x, y);
        r(x, y) = uni(rng);
      }
      t.row(x) /= row_sum;
      // renormalize exactly against accumulated rounding
      t.row(x) /= t.row(x).sum();
    }
    mdp.transition[static_cast<std::size_t>(a)] = t;
    mdp.reward[static_cast<std::size_t>(a)] = r;
  }
  mdp.validate();
  return mdp;
}

Mat bellman_backup(const ToyMdp& mdp, const Mat& q) {
  const Vec v = q.rowwise().maxCoeff();
  Mat out(mdp.n_states, mdp.n_actions);
  for (int a = 0; a < mdp.n_actions; ++a) {
    const Mat& t = mdp.transition[static_cast<std::size_t>(a)];
    const Mat& r = mdp.reward[static_cast<std::size_t>(a)];
    for (Index x = 0; x < mdp.n_states; ++x) {
      double acc = 0.0;
      for (Index y = 0; y < mdp.n_states; ++y) {
        acc += t(x, y) * (r(x, y) + mdp.gamma * v[y]);
      }
      out(x, a) = acc;
    }
  }
  return out;
}

Mat value_iteration(const ToyMdp& mdp, double tol, int max_iter) {
  Mat q = Mat::Zero(mdp.n_states, mdp.n_actions);
  for (int it = 0; it < max_iter; ++it) {
    Mat next = bellman_backup(mdp, q);
    const double delta = (next - q).cwiseAbs().maxCoeff();
    q = std::move(next);
    if (delta < tol) return q;
  }
  throw std::runtime_error("value iteration failed to converge");
}

Mat regularizer(const Mat& qstar) {
  const Vec mean = qstar.rowwise().mean();
  return qstar.colwise() - mean;
}

Mat teacher_operator_step(const Mat& q, const ToyMdp& mdp, double lambda, const Mat& qstar) {
  if (q.rows() != qstar.rows() || q.cols() != qstar.cols()) {
    throw ConfigError("teacher operator: shape mismatch");
  }
  const Mat bellman = bellman_backup(mdp, q);
  const Vec mean = q.rowwise().mean();
  const Mat anchored = (regularizer(qstar).colwise() + mean);
  return lambda * bellman + (1.0 - lambda) * anchored;
}

}  // namespace hft
