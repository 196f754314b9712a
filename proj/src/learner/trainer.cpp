#include "hft/learner/trainer.hpp"

#include <cmath>

namespace hft {

int argmax_index(const VecRef& v) {
  Index best = 0;
  v.maxCoeff(&best);
  return static_cast<int>(best);
}

Vec stable_softmax(const VecRef& q, double temperature) {
  if (temperature <= 0.0) throw ConfigError("softmax temperature must be positive");
  Vec z = q / temperature;
  z.array() -= z.maxCoeff();
  Vec e = z.array().exp();
  return e / e.sum();
}

double softmax_kl(const VecRef& q, const VecRef& q_ref, double temperature) {
  const Vec p = stable_softmax(q, temperature);
  const Vec g = stable_softmax(q_ref, temperature);
  double kl = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    kl += p[i] * (std::log(p[i]) - std::log(g[i]));
  }
  return std::max(kl, 0.0);
}

LossBreakdown qteacher_loss(const ValueNet& online, const ValueNet& target,
                            std::span<const Transition* const> batch, double alpha,
                            double gamma, double temperature, ValueNet::Grads* grads) {
  if (batch.empty()) throw ConfigError("qteacher_loss: empty batch");
  const Index b = static_cast<Index>(batch.size());
  const Index in_dim = batch[0]->state.size();

  Mat states(b, in_dim);
  for (Index j = 0; j < b; ++j) states.row(j) = batch[j]->state.transpose();

  ValueNet::Cache cache;
  const Mat q_online = online.forward_batch(states, &cache);

  // Double-Q targets: online picks the next action, target evaluates it.
  Vec targets(b);
  {
    std::vector<Index> live;
    for (Index j = 0; j < b; ++j) {
      if (!batch[j]->done) live.push_back(j);
    }
    Mat next_states(static_cast<Index>(live.size()), in_dim);
    for (Index k = 0; k < static_cast<Index>(live.size()); ++k) {
      next_states.row(k) = batch[live[static_cast<std::size_t>(k)]]->next_state.transpose();
    }
    Mat q_next_online, q_next_target;
    if (!live.empty()) {
      q_next_online = online.forward_batch(next_states);
      q_next_target = target.forward_batch(next_states);
    }
    for (Index j = 0; j < b; ++j) targets[j] = batch[j]->reward;
    for (Index k = 0; k < static_cast<Index>(live.size()); ++k) {
      Index sel = 0;
      q_next_online.row(k).maxCoeff(&sel);
      targets[live[static_cast<std::size_t>(k)]] += gamma * q_next_target(k, sel);
    }
  }

  LossBreakdown loss;
  Mat dq = Mat::Zero(b, q_online.cols());
  const double inv_b = 1.0 / static_cast<double>(b);

  for (Index j = 0; j < b; ++j) {
    const int a = batch[j]->action;
    const double err = q_online(j, a) - targets[j];
    loss.td += err * err * inv_b;
    dq(j, a) += 2.0 * err * inv_b;
  }

  if (alpha != 0.0) {
    for (Index j = 0; j < b; ++j) {
      if (batch[j]->qstar_row.size() != q_online.cols()) {
        throw ConfigError("qteacher_loss: transition is missing its teacher row");
      }
      const Vec p = stable_softmax(q_online.row(j).transpose(), temperature);
      const Vec g = stable_softmax(batch[j]->qstar_row, temperature);
      double kl = 0.0;
      for (Index i = 0; i < p.size(); ++i) kl += p[i] * (std::log(p[i]) - std::log(g[i]));
      loss.kl += kl * inv_b;
      for (Index i = 0; i < p.size(); ++i) {
        dq(j, i) += alpha * inv_b / temperature *
                    (p[i] * ((std::log(p[i]) - std::log(g[i])) - kl));
      }
    }
  }

  loss.total = loss.td + alpha * loss.kl;
  if (grads) *grads = online.backward(cache, dq);
  return loss;
}

GreedyEval greedy_episode(const ValueNet& net, LowLevelEnv& env, int initial_pos_index) {
  env.reset(initial_pos_index);
  GreedyEval out;
  int last_pos = initial_pos_index;
  int changes = 0;
  while (!env.done()) {
    const int a = argmax_index(net.forward(env.state()));
    out.reward += env.step(a).reward;
    const int pos = env.position_index();
    if (pos != last_pos) {
      ++changes;
      last_pos = pos;
    }
  }
  out.trades = changes;
  out.ahl = static_cast<double>(env.horizon()) / (changes + 1);
  return out;
}

namespace {

double epsilon_at(const TrainConfig& cfg, long step, long planned) {
  if (planned <= 0) return cfg.eps_end;
  const double anneal = cfg.eps_frac * static_cast<double>(planned);
  if (anneal <= 0.0) return cfg.eps_end;
  const double frac = std::min(1.0, static_cast<double>(step) / anneal);
  return cfg.eps_start + (cfg.eps_end - cfg.eps_start) * frac;
}

double alpha_at(const TrainConfig& cfg, long grad_step, long planned_grad_steps) {
  if (!cfg.use_teacher || cfg.alpha0 == 0.0) return 0.0;
  const double k_half =
      std::max(1.0, cfg.alpha_half_frac * static_cast<double>(planned_grad_steps));
  return cfg.alpha0 * std::pow(0.5, static_cast<double>(grad_step) / k_half);
}

}  // namespace

TrainResult train_low_level(int epochs, const TaskSource& next_task, const TrainConfig& cfg,
                            const EpochHook& on_epoch) {
  if (epochs < 1) throw ConfigError("train_low_level: need at least one epoch");
  std::mt19937_64 rng(cfg.seed);

  TrainResult result;
  ReplayBuffer buffer(cfg.buffer_capacity);
  AdamOptimizer opt(cfg.lr);
  bool nets_ready = false;
  ValueNet target;

  long planned_env_steps = 0;
  long planned_grad_steps = 0;

  for (int epoch = 0; epoch < epochs; ++epoch) {
    EpochTask task = next_task(epoch, rng);
    LowLevelEnv& env = task.env;
    if (task.qstar == nullptr) throw ConfigError("train_low_level: task without a Q* table");

    if (!nets_ready) {
      const int in_dim = static_cast<int>(env.state().size());
      result.net = ValueNet(in_dim, cfg.hidden, env.grid().n_actions(), cfg.seed);
      target = result.net;
      nets_ready = true;
      const long per_epoch = env.horizon() * (cfg.use_optimal_actor ? 2 : 1);
      planned_env_steps = per_epoch * epochs;
      planned_grad_steps =
          epochs * std::max<long>(1, std::lround(cfg.grad_steps_ratio *
                                                 static_cast<double>(per_epoch) /
                                                 cfg.minibatch));
    }

    long collected = 0;

    // epsilon-greedy episode
    env.reset(0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<int> random_action(0, env.grid().n_actions() - 1);
    while (!env.done()) {
      const Index t_rel = env.cursor() - env.begin();
      const int p = env.position_index();
      Transition tr;
      tr.state = env.state();
      const double eps = epsilon_at(cfg, result.total_env_steps + collected, planned_env_steps);
      tr.action = uni(rng) < eps ? random_action(rng)
                                 : argmax_index(result.net.forward(tr.state));
      tr.qstar_row = task.qstar->row(t_rel, p);
      LowStepResult sr = env.step(tr.action);
      tr.reward = sr.reward;
      tr.next_state = sr.state;
      tr.done = sr.done;
      buffer.push(std::move(tr));
      ++collected;
    }

    if (cfg.use_optimal_actor) {
      env.reset(0);
      for (Transition& tr : optimal_rollout(*task.qstar, env)) {
        buffer.push(std::move(tr));
        ++collected;
      }
    }
    result.total_env_steps += collected;

    EpochLog log;
    log.epoch = epoch;
    log.env_steps = result.total_env_steps;
    log.optimal_value = task.qstar->optimal_value(0, 0);

    const long grad_steps =
        std::max<long>(1, std::lround(cfg.grad_steps_ratio * static_cast<double>(collected) /
                                      cfg.minibatch));
    int applied = 0;
    for (long g = 0; g < grad_steps; ++g) {
      if (buffer.size() < static_cast<std::size_t>(cfg.minibatch)) break;
      const auto batch = buffer.sample(static_cast<std::size_t>(cfg.minibatch), rng);
      const double alpha = alpha_at(cfg, result.total_grad_steps, planned_grad_steps);
      ValueNet::Grads grads;
      const LossBreakdown loss =
          qteacher_loss(result.net, target, batch, alpha, cfg.gamma, cfg.kl_temperature, &grads);
      if (!std::isfinite(loss.total)) {
        throw std::runtime_error("train_low_level: non-finite loss at epoch " +
                                 std::to_string(epoch));
      }
      opt.step(result.net, grads);
      soft_update(target, result.net, cfg.tau);
      ++result.total_grad_steps;
      log.loss_td += loss.td;
      log.loss_kl += loss.kl;
      log.alpha = alpha;
      ++applied;
    }
    if (applied > 0) {
      log.loss_td /= applied;
      log.loss_kl /= applied;
    } else {
      log.alpha = alpha_at(cfg, result.total_grad_steps, planned_grad_steps);
    }

    const GreedyEval eval = greedy_episode(result.net, env, 0);
    log.eval_reward = eval.reward;
    log.ahl = eval.ahl;

    if (result.steps_to_threshold < 0 && log.optimal_value > 0.0 &&
        eval.reward >= cfg.eval_threshold * log.optimal_value) {
      result.steps_to_threshold = result.total_env_steps;
    }

    result.log.push_back(log);
    if (on_epoch) on_epoch(log, result.net);
  }
  return result;
}

}  // namespace hft
