#pragma once

#include "hft/execution/low_env.hpp"
#include "hft/learner/replay.hpp"
#include "hft/learner/value_net.hpp"
#include "hft/oracle/qstar.hpp"

#include <functional>
#include <random>
#include <span>
#include <vector>

namespace hft {

struct TrainConfig {
  double lr = 5e-4;
  std::size_t buffer_capacity = 1'000'000;
  int minibatch = 512;
  double tau = 0.005;
  double gamma = 1.0;  // matches the undiscounted DP teacher
  std::vector<int> hidden = {128, 128};

  double alpha0 = 128.0;
  double alpha_half_frac = 0.10;  // half-life as a fraction of planned gradient steps
  double kl_temperature = 1.0;

  double eps_start = 1.0;
  double eps_end = 0.05;
  double eps_frac = 0.5;  // anneal over this fraction of planned env steps

  double grad_steps_ratio = 4.0;  // gradient steps per collected step / minibatch

  bool use_teacher = true;
  bool use_optimal_actor = true;

  double eval_threshold = 0.95;  // fraction of the DP optimum that counts as converged
  std::uint64_t seed = 1;
};

struct LossBreakdown {
  double total = 0.0;
  double td = 0.0;
  double kl = 0.0;
};

// Squared double-Q TD error plus alpha-weighted KL between the tempered
// softmax of the online row and of the teacher row; also emits gradients.
LossBreakdown qteacher_loss(const ValueNet& online, const ValueNet& target,
                            std::span<const Transition* const> batch, double alpha,
                            double gamma, double temperature,
                            ValueNet::Grads* grads = nullptr);

// KL(softmax(q/temp) || softmax(q_ref/temp)); non-negative, 0 iff equal shifts.
double softmax_kl(const VecRef& q, const VecRef& q_ref, double temperature);

Vec stable_softmax(const VecRef& q, double temperature);

struct EpochLog {
  int epoch = 0;
  long env_steps = 0;  // cumulative collected steps
  double loss_td = 0.0;
  double loss_kl = 0.0;
  double alpha = 0.0;
  double eval_reward = 0.0;
  double ahl = 0.0;  // average holding length of the greedy evaluation, seconds
  double optimal_value = 0.0;
};

struct EpochTask {
  LowLevelEnv env;
  const QStarTable* qstar = nullptr;
};

struct TrainResult {
  ValueNet net;
  std::vector<EpochLog> log;
  long total_env_steps = 0;
  long total_grad_steps = 0;
  long steps_to_threshold = -1;  // env steps when eval first reached the threshold
};

using TaskSource = std::function<EpochTask(int epoch, std::mt19937_64& rng)>;
using EpochHook = std::function<void(const EpochLog&, const ValueNet& net)>;

TrainResult train_low_level(int epochs, const TaskSource& next_task, const TrainConfig& cfg,
                            const EpochHook& on_epoch = {});

struct GreedyEval {
  double reward = 0.0;
  double ahl = 0.0;
  int trades = 0;
};

GreedyEval greedy_episode(const ValueNet& net, LowLevelEnv& env, int initial_pos_index = 0);

int argmax_index(const VecRef& v);

}  // namespace hft
