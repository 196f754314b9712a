#pragma once

#include "hft/learner/trainer.hpp"
#include "hft/marketdata/csv.hpp"
#include "hft/marketdata/synth.hpp"
#include "hft/pool/segmentation.hpp"
#include "hft/router/router_train.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hft::cli {

struct DataConfig {
  std::string source = "synth";  // synth | csv
  std::string csv_path;
  std::string fill = "none";  // none | hold
  Index max_gap_s = 60;
  SynthSpec synth;
  double split_train = 0.6;
  double split_valid = 0.2;  // remainder is the test span
};

struct BacktestConfig {
  int macd_span_short = 9;
  int macd_span_mid = 12;
  int macd_span_long = 26;
  int iv_levels = 5;
  double iv_lower = -0.2;
  double iv_upper = 0.2;
};

struct PipelineConfig {
  std::string out_dir = "out";
  std::uint64_t seed = 1;

  DataConfig data;

  double max_position = 1.0;  // H
  int n_actions = 5;          // |A|
  double fee_rate = 0.00015;  // exchange preset; the 0.02% variant is config

  Index chunk_length = 3600;  // L
  std::vector<double> betas = {-90.0, -10.0, 30.0, 100.0};
  int epochs_per_beta = 50;
  int agents_kept_per_beta = 2;

  double theta = 0.1;
  int n_labels = 5;  // M
  SegmentationParams segmentation;

  TrainConfig learner;
  RouterConfig router;
  BacktestConfig backtest;

  double initial_cash = 0.0;  // 0 = max_position * first mid of the span

  ActionGrid grid() const { return ActionGrid(max_position, n_actions); }
  SegmentationParams segmentation_params() const;

  nlohmann::json to_json() const;
  static PipelineConfig from_json(const nlohmann::json& j);
  std::string hash() const;
};

// Shrinks the run to a minutes-scale CPU budget and installs the default
// five-trend synthetic market.
void apply_desk_preset(PipelineConfig& cfg);

std::vector<Regime> default_desk_regimes(int cycles);

// "kind:length[:drift[:vol]]", comma separated.
std::vector<Regime> parse_regimes(const std::string& text);

}  // namespace hft::cli
