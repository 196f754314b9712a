#include "hft/pool/agent_pool.hpp"

#include "hft/learner/trainer.hpp"

#include <cmath>

namespace hft {

int NetPolicy::act(Index, const VecRef& features, double pos_norm) const {
  Vec state(features.size() + 1);
  state.head(features.size()) = features;
  state[features.size()] = pos_norm;
  return argmax_index(net_->forward(state));
}

AgentPool::AgentPool(ActionGrid grid, int m_labels) : grid_(grid), m_(m_labels) {
  if (m_labels < 1) throw ConfigError("agent pool needs at least one label");
  cells_.resize(static_cast<std::size_t>(m_) * static_cast<std::size_t>(n()));
  for (int l = 0; l < m_; ++l) {
    for (int p = 0; p < n(); ++p) {
      PoolCell& c = cell(l, p);
      c.label = l + 1;
      c.position_index = p;
    }
  }
}

PoolCell& AgentPool::cell(int label_index, int pos_index) {
  return cells_[static_cast<std::size_t>(label_index) * static_cast<std::size_t>(n()) +
                static_cast<std::size_t>(pos_index)];
}

const PoolCell& AgentPool::cell(int label_index, int pos_index) const {
  return cells_[static_cast<std::size_t>(label_index) * static_cast<std::size_t>(n()) +
                static_cast<std::size_t>(pos_index)];
}

nlohmann::json AgentPool::manifest() const {
  nlohmann::json cells = nlohmann::json::array();
  for (int l = 0; l < m_; ++l) {
    for (int p = 0; p < n(); ++p) {
      const PoolCell& c = cell(l, p);
      cells.push_back({{"label", c.label},
                       {"position_index", c.position_index},
                       {"agent_checkpoint", c.checkpoint_ref},
                       {"mean_return", c.mean_return},
                       {"n_segments", c.n_segments}});
    }
  }
  return {{"grid", {{"max_position", grid_.max_position()}, {"n_actions", grid_.n_actions()}}},
          {"labels", m_},
          {"cells", cells}};
}

std::vector<const PoolCell*> mask_to_column(const AgentPool& pool, double position) {
  const int p = pool.grid().nearest_index(position);
  std::vector<const PoolCell*> column;
  column.reserve(static_cast<std::size_t>(pool.m()));
  for (int l = 0; l < pool.m(); ++l) column.push_back(&pool.cell(l, p));
  return column;
}

double rollout_return(const LowPolicy& policy, const MarketSeries& series,
                      const Mat& low_features, const ActionGrid& grid, double fee_rate,
                      Index begin, Index end, int initial_pos_index) {
  const double cash0 = grid.max_position() * series.mid(begin);
  LowLevelEnv env(series, low_features, grid, fee_rate, begin, end, cash0);
  env.reset(initial_pos_index);
  const double v0 = env.net_value_now();
  double reward_sum = 0.0;
  while (!env.done()) {
    const int a = policy.act(env.cursor(), low_features.row(env.cursor()).transpose(),
                             env.account().position / grid.max_position());
    reward_sum += env.step(a).reward;
  }
  return reward_sum / v0;  // telescoped (V_T - V_0) / V_0
}

AgentPool build_agent_pool(const std::vector<AgentCandidate>& candidates,
                           const PoolBuildInputs& inputs, const ActionGrid& grid,
                           int m_labels) {
  if (candidates.empty()) throw ConfigError("agent pool needs at least one candidate");

  // Segment minute spans -> second spans, clipped to the feature warm-up.
  struct Span {
    Index begin, end;
  };
  std::vector<std::vector<Span>> spans_by_label(static_cast<std::size_t>(m_labels));
  for (const Segment& s : inputs.segments) {
    if (s.label < 1 || s.label > m_labels) {
      throw ConfigError("segment label " + std::to_string(s.label) + " outside 1..M");
    }
    Span span{std::max<Index>(s.begin * 60, kFeatureWindow),
              std::min<Index>(s.end * 60, inputs.series.n())};
    if (span.end - span.begin >= 2) {
      spans_by_label[static_cast<std::size_t>(s.label - 1)].push_back(span);
    }
  }
  for (int l = 0; l < m_labels; ++l) {
    if (spans_by_label[static_cast<std::size_t>(l)].empty()) {
      throw ConfigError("no evaluation segment carries label " + std::to_string(l + 1) +
                        " (" + label_name(l + 1, m_labels) + ")");
    }
  }

  const auto flat_policy = std::make_shared<ConstantPolicy>(0);

  AgentPool pool(grid, m_labels);
  for (int l = 0; l < m_labels; ++l) {
    const auto& spans = spans_by_label[static_cast<std::size_t>(l)];
    for (int p = 0; p < grid.n_actions(); ++p) {
      struct Score {
        double mean = 0.0, var = 0.0;
      };
      auto evaluate = [&](const LowPolicy& policy) {
        Vec rets(static_cast<Index>(spans.size()));
        for (Index k = 0; k < rets.size(); ++k) {
          const Span& sp = spans[static_cast<std::size_t>(k)];
          rets[k] = rollout_return(policy, inputs.series, inputs.low_features, grid,
                                   inputs.fee_rate, sp.begin, sp.end, p);
        }
        Score sc;
        sc.mean = rets.mean();
        sc.var = (rets.array() - sc.mean).square().sum() / rets.size();
        return sc;
      };

      int best = -1;
      Score best_score;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        const Score sc = evaluate(*candidates[c].policy);
        const bool wins =
            best < 0 || sc.mean > best_score.mean ||
            (sc.mean == best_score.mean &&
             (sc.var < best_score.var ||
              (sc.var == best_score.var &&
               candidates[c].id < candidates[static_cast<std::size_t>(best)].id)));
        if (wins) {
          best = static_cast<int>(c);
          best_score = sc;
        }
      }

      PoolCell& cell = pool.cell(l, p);
      cell.n_segments = static_cast<int>(spans.size());
      const Score flat_score = evaluate(*flat_policy);
      if (flat_score.mean > best_score.mean) {
        cell.agent_id = -1;
        cell.checkpoint_ref = "flat";
        cell.policy = flat_policy;
        cell.mean_return = flat_score.mean;
      } else {
        const AgentCandidate& winner = candidates[static_cast<std::size_t>(best)];
        cell.agent_id = winner.id;
        cell.checkpoint_ref = winner.ref;
        cell.policy = winner.policy;
        cell.mean_return = best_score.mean;
      }
    }
  }
  return pool;
}

}  // namespace hft
