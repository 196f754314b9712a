#include "hft/oracle/qstar.hpp"

#include "hft/io/serde.hpp"

#include <cmath>
#include <limits>

namespace hft {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

int QStarTable::greedy_action(Index t, int p) const {
  const Mat& m = values[static_cast<std::size_t>(t)];
  int best = p;  // hold when every move is infeasible
  double best_v = kNegInf;
  for (int a = 0; a < grid.n_actions(); ++a) {
    if (m(p, a) > best_v) {
      best_v = m(p, a);
      best = a;
    }
  }
  return best;
}

double QStarTable::optimal_value(Index t, int p) const {
  return values[static_cast<std::size_t>(t)].row(p).maxCoeff();
}

QStarTable build_q_star(const MarketSeries& series, Index begin, Index end,
                        const ActionGrid& grid, double fee_rate) {
  if (begin < 0 || end > series.n() || begin >= end) {
    throw ConfigError("build_q_star: invalid slice");
  }
  const Index n = end - begin;
  const int na = grid.n_actions();

  QStarTable table;
  table.n = n;
  table.grid = grid;
  table.fee_rate = fee_rate;
  table.series_begin = begin;
  table.values.assign(static_cast<std::size_t>(n), Mat::Zero(na, na));

  for (Index t = n - 2; t >= 0; --t) {
    const Index abs_t = begin + t;
    const Mat& next = table.values[static_cast<std::size_t>(t + 1)];
    Mat& cur = table.values[static_cast<std::size_t>(t)];
    const double bid_now = series.best_bid(abs_t);
    const double bid_next = series.best_bid(abs_t + 1);
    for (int p = 0; p < na; ++p) {
      for (int a = 0; a < na; ++a) {
        double exec_cost = 0.0;
        if (a != p) {
          const double delta = grid.position(a) - grid.position(p);
          try {
            exec_cost = execute_market_order(series.lob(abs_t), delta, fee_rate).cost;
          } catch (const InsufficientDepthError&) {
            cur(p, a) = kNegInf;  // excluded from the max
            continue;
          }
        }
        const double reward =
            grid.position(a) * bid_next - (grid.position(p) * bid_now + exec_cost);
        cur(p, a) = next.row(a).maxCoeff() + reward;
      }
    }
  }
  return table;
}

std::vector<Transition> optimal_rollout(const QStarTable& qstar, LowLevelEnv& env) {
  if (env.begin() != qstar.series_begin || env.end() - env.begin() != qstar.n) {
    throw ConfigError("optimal_rollout: env span does not match the Q* slice");
  }
  env.reset(env.position_index());
  std::vector<Transition> out;
  out.reserve(static_cast<std::size_t>(env.horizon()));
  while (!env.done()) {
    const Index t_rel = env.cursor() - env.begin();
    const int p = env.position_index();
    const int a = qstar.greedy_action(t_rel, p);
    Transition tr;
    tr.state = env.state();
    tr.action = a;
    tr.qstar_row = qstar.row(t_rel, p);
    LowStepResult r = env.step(a);
    tr.reward = r.reward;
    tr.next_state = r.state;
    tr.done = r.done;
    out.push_back(std::move(tr));
  }
  return out;
}

Vec regularizer_row(const QStarTable& qstar, Index t, int p) {
  Vec row = qstar.row(t, p);
  return row.array() - row.mean();
}

void QStarTable::save(const std::string& path) const {
  BinaryWriter w;
  w.magic("QSTARTB1");
  w.u64(static_cast<std::uint64_t>(n));
  w.u64(static_cast<std::uint64_t>(grid.n_actions()));
  for (const Mat& m : values) {
    for (Index p = 0; p < m.rows(); ++p) {
      for (Index a = 0; a < m.cols(); ++a) w.f64(m(p, a));
    }
  }
  w.to_file(path);
  nlohmann::json side = {
      {"n", n},
      {"n_actions", grid.n_actions()},
      {"max_position", grid.max_position()},
      {"fee_rate", fee_rate},
      {"series_begin", series_begin},
  };
  write_json(path + ".json", side);
}

QStarTable QStarTable::load(const std::string& path) {
  const nlohmann::json side = read_json(path + ".json");
  BinaryReader r = BinaryReader::from_file(path);
  r.expect_magic("QSTARTB1");
  const Index n = static_cast<Index>(r.u64());
  const int na = static_cast<int>(r.u64());

  QStarTable table;
  table.n = n;
  table.grid = ActionGrid(side.at("max_position").get<double>(), na);
  table.fee_rate = side.at("fee_rate").get<double>();
  table.series_begin = side.at("series_begin").get<Index>();
  table.values.assign(static_cast<std::size_t>(n), Mat::Zero(na, na));
  for (Mat& m : table.values) {
    for (Index p = 0; p < na; ++p) {
      for (Index a = 0; a < na; ++a) m(p, a) = r.f64();
    }
  }
  return table;
}

}  // namespace hft
