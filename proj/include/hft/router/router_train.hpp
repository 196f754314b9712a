#pragma once

#include "hft/learner/trainer.hpp"
#include "hft/router/high_env.hpp"

#include <functional>
#include <random>

namespace hft {

struct RouterConfig {
  double lr = 5e-4;
  std::size_t buffer_capacity = 1'000'000;
  int minibatch = 512;
  double tau = 0.005;
  double gamma = 0.99;
  std::vector<int> hidden = {128, 128};
  double eps_start = 1.0;
  double eps_end = 0.05;
  double eps_frac = 0.5;
  double grad_steps_ratio = 4.0;
  int epochs = 10;
  std::uint64_t seed = 2;
};

struct RouterResult {
  ValueNet net;  // input = high features + position, output = m label heads
  std::vector<EpochLog> log;
  long total_env_steps = 0;
};

using RouterEnvSource = std::function<HighLevelEnv(int epoch, std::mt19937_64& rng)>;

// Plain double-Q training over the minute-level MDP; heads outside
// `valid_heads` are never selected and are excluded from the target max.
RouterResult train_router(const RouterEnvSource& env_source, const RouterConfig& cfg,
                          const std::vector<bool>& valid_heads = {});

// Greedy label choice restricted to valid heads.
int masked_argmax(const VecRef& q, const std::vector<bool>& valid_heads);

struct RouterEval {
  double reward = 0.0;
  std::vector<long> label_counts;
  long label_switches = 0;
};

RouterEval greedy_router_episode(const ValueNet& router, HighLevelEnv& env,
                                 const std::vector<bool>& valid_heads = {},
                                 int initial_pos_index = 0);

}  // namespace hft
