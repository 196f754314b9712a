#include "hft/router/router_train.hpp"

#include <cmath>

namespace hft {

int masked_argmax(const VecRef& q, const std::vector<bool>& valid_heads) {
  int best = -1;
  double best_v = 0.0;
  for (Index i = 0; i < q.size(); ++i) {
    if (!valid_heads.empty() && !valid_heads[static_cast<std::size_t>(i)]) continue;
    if (best < 0 || q[i] > best_v) {
      best = static_cast<int>(i);
      best_v = q[i];
    }
  }
  if (best < 0) throw ConfigError("no valid router head to select");
  return best;
}

RouterEval greedy_router_episode(const ValueNet& router, HighLevelEnv& env,
                                 const std::vector<bool>& valid_heads,
                                 int initial_pos_index) {
  env.reset(initial_pos_index);
  RouterEval out;
  out.label_counts.assign(static_cast<std::size_t>(env.pool().m()), 0);
  int last_label = -1;
  while (!env.done()) {
    const int label = masked_argmax(router.forward(env.state()), valid_heads);
    ++out.label_counts[static_cast<std::size_t>(label)];
    if (last_label >= 0 && label != last_label) ++out.label_switches;
    last_label = label;
    out.reward += env.step(label).reward;
  }
  return out;
}

namespace {

// Double-Q loss on minute transitions with head masking; no teacher term.
LossBreakdown masked_router_loss(const ValueNet& online, const ValueNet& target,
                                 std::span<const Transition* const> batch, double gamma,
                                 const std::vector<bool>& valid_heads,
                                 ValueNet::Grads* grads) {
  const Index b = static_cast<Index>(batch.size());
  const Index in_dim = batch[0]->state.size();
  Mat states(b, in_dim);
  for (Index j = 0; j < b; ++j) states.row(j) = batch[j]->state.transpose();

  ValueNet::Cache cache;
  const Mat q_online = online.forward_batch(states, &cache);

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
      const int sel = masked_argmax(q_next_online.row(k).transpose(), valid_heads);
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
  loss.total = loss.td;
  if (grads) *grads = online.backward(cache, dq);
  return loss;
}

}  // namespace

RouterResult train_router(const RouterEnvSource& env_source, const RouterConfig& cfg,
                          const std::vector<bool>& valid_heads) {
  if (cfg.epochs < 1) throw ConfigError("train_router: need at least one epoch");
  std::mt19937_64 rng(cfg.seed);

  RouterResult result;
  ReplayBuffer buffer(cfg.buffer_capacity);
  AdamOptimizer opt(cfg.lr);
  ValueNet target;
  bool nets_ready = false;
  long planned_env_steps = 0;

  std::vector<int> selectable;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    HighLevelEnv env = env_source(epoch, rng);
    if (!nets_ready) {
      const int in_dim = static_cast<int>(env.state().size());
      result.net = ValueNet(in_dim, cfg.hidden, env.pool().m(), cfg.seed);
      target = result.net;
      nets_ready = true;
      planned_env_steps = static_cast<long>(env.horizon()) * cfg.epochs;
      for (int l = 0; l < env.pool().m(); ++l) {
        if (valid_heads.empty() || valid_heads[static_cast<std::size_t>(l)]) {
          selectable.push_back(l);
        }
      }
      if (selectable.empty()) throw ConfigError("router mask excludes every head");
    }

    env.reset(0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, selectable.size() - 1);
    long collected = 0;
    while (!env.done()) {
      Transition tr;
      tr.state = env.state();
      const double anneal = cfg.eps_frac * static_cast<double>(planned_env_steps);
      const double frac =
          anneal > 0.0
              ? std::min(1.0, static_cast<double>(result.total_env_steps + collected) / anneal)
              : 1.0;
      const double eps = cfg.eps_start + (cfg.eps_end - cfg.eps_start) * frac;
      tr.action = uni(rng) < eps ? selectable[pick(rng)]
                                 : masked_argmax(result.net.forward(tr.state), valid_heads);
      const HighLevelEnv::HighStep sr = env.step(tr.action);
      tr.reward = sr.reward;
      tr.next_state = sr.state;
      tr.done = sr.done;
      buffer.push(std::move(tr));
      ++collected;
    }
    result.total_env_steps += collected;

    EpochLog log;
    log.epoch = epoch;
    log.env_steps = result.total_env_steps;

    const long grad_steps =
        std::max<long>(1, std::lround(cfg.grad_steps_ratio * static_cast<double>(collected) /
                                      cfg.minibatch));
    int applied = 0;
    for (long g = 0; g < grad_steps; ++g) {
      if (buffer.size() < static_cast<std::size_t>(cfg.minibatch)) break;
      const auto batch = buffer.sample(static_cast<std::size_t>(cfg.minibatch), rng);
      ValueNet::Grads grads;
      const LossBreakdown loss =
          masked_router_loss(result.net, target, batch, cfg.gamma, valid_heads, &grads);
      if (!std::isfinite(loss.total)) {
        throw std::runtime_error("train_router: non-finite loss at epoch " +
                                 std::to_string(epoch));
      }
      opt.step(result.net, grads);
      soft_update(target, result.net, cfg.tau);
      log.loss_td += loss.td;
      ++applied;
    }
    if (applied > 0) log.loss_td /= applied;

    const RouterEval eval = greedy_router_episode(result.net, env, valid_heads, 0);
    log.eval_reward = eval.reward;
    // minute-scale analogue of holding length: average label run length
    log.ahl = static_cast<double>(env.horizon()) / static_cast<double>(eval.label_switches + 1);

    result.log.push_back(log);
  }
  return result;
}

}  // namespace hft
