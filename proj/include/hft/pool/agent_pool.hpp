#pragma once

#include "hft/execution/low_env.hpp"
#include "hft/learner/value_net.hpp"
#include "hft/pool/segmentation.hpp"

#include <json.hpp>

#include <memory>
#include <string>
#include <vector>

namespace hft {

// Second-level trading policy: maps (time, features, position) to a target
// grid index. pos_norm is position / max_position.
class LowPolicy {
 public:
  virtual ~LowPolicy() = default;
  virtual int act(Index t, const VecRef& features, double pos_norm) const = 0;
  virtual bool needs_features() const { return false; }
};

class ConstantPolicy final : public LowPolicy {
 public:
  explicit ConstantPolicy(int target_index) : target_(target_index) {}
  int act(Index, const VecRef&, double) const override { return target_; }

 private:
  int target_;
};

// Greedy head over a trained value network.
class NetPolicy final : public LowPolicy {
 public:
  explicit NetPolicy(std::shared_ptr<const ValueNet> net) : net_(std::move(net)) {}
  int act(Index t, const VecRef& features, double pos_norm) const override;
  bool needs_features() const override { return true; }
  const ValueNet& net() const { return *net_; }

 private:
  std::shared_ptr<const ValueNet> net_;
};

struct AgentCandidate {
  int id = 0;
  std::string ref;  // checkpoint path or other stable identifier
  std::shared_ptr<const LowPolicy> policy;
};

struct PoolCell {
  int label = 0;           // 1..m
  int position_index = 0;  // 0..n-1
  int agent_id = -1;       // -1 marks the implicit flat fallback
  std::string checkpoint_ref;
  std::shared_ptr<const LowPolicy> policy;
  double mean_return = 0.0;
  int n_segments = 0;
};

// (trend label x initial position) matrix of selected agents.
class AgentPool {
 public:
  AgentPool(ActionGrid grid, int m_labels);

  int m() const { return m_; }
  int n() const { return grid_.n_actions(); }
  const ActionGrid& grid() const { return grid_; }

  PoolCell& cell(int label_index, int pos_index);  // label_index 0-based
  const PoolCell& cell(int label_index, int pos_index) const;

  nlohmann::json manifest() const;

 private:
  ActionGrid grid_;
  int m_;
  std::vector<PoolCell> cells_;
};

// Pool column whose initial-position index is nearest to `position`.
std::vector<const PoolCell*> mask_to_column(const AgentPool& pool, double position);

// Greedy rollout return of a policy over seconds [begin, end) starting from a
// grid position; the account starts with cash = max_position * first mid.
double rollout_return(const LowPolicy& policy, const MarketSeries& series,
                      const Mat& low_features, const ActionGrid& grid, double fee_rate,
                      Index begin, Index end, int initial_pos_index);

struct PoolBuildInputs {
  const MarketSeries& series;  // evaluation (valid) series
  const Mat& low_features;
  std::vector<Segment> segments;  // labelled, minute indices into `series`
  double fee_rate = 0.0;
};

// Each cell takes the candidate with the best mean segment return; ties break
// by lower return variance, then lower agent id. An always-flat policy is an
// implicit floor candidate in every cell.
AgentPool build_agent_pool(const std::vector<AgentCandidate>& candidates,
                           const PoolBuildInputs& inputs, const ActionGrid& grid,
                           int m_labels);

}  // namespace hft
