#pragma once

#include "hft/types.hpp"

#include <cstdint>
#include <vector>

namespace hft {

// Small finite MDP used to audit the teacher operator. Q matrices are
// (states x actions); transition/reward are indexed [action](state, next).
struct ToyMdp {
  int n_states = 0;
  int n_actions = 0;
  double gamma = 0.9;
  std::vector<Mat> transition;
  std::vector<Mat> reward;

  void validate() const;
  static ToyMdp random(int n_states, int n_actions, double gamma, std::uint64_t seed);
};

// Standard Bellman optimality backup.
Mat bellman_backup(const ToyMdp& mdp, const Mat& q);

// Fixed point of bellman_backup to within tol in the sup norm.
Mat value_iteration(const ToyMdp& mdp, double tol = 1e-13, int max_iter = 200000);

// Re(x,a) = q*(x,a) - mean_a q*(x,a)
Mat regularizer(const Mat& qstar);

// Hq = lambda * Bellman(q) + (1 - lambda) * (mean_a q + Re)
Mat teacher_operator_step(const Mat& q, const ToyMdp& mdp, double lambda, const Mat& qstar);

}  // namespace hft
