#include "hft/cli/config.hpp"

#include "hft/io/serde.hpp"

#include <sstream>

namespace hft::cli {

namespace {

template <typename T>
void get_if(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

nlohmann::json regimes_to_json(const std::vector<Regime>& regimes) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : regimes) {
    arr.push_back({{"kind", to_string(r.kind)},
                   {"length", r.length_s},
                   {"drift", r.drift},
                   {"vol", r.vol}});
  }
  return arr;
}

std::vector<Regime> regimes_from_json(const nlohmann::json& arr) {
  std::vector<Regime> out;
  for (const auto& j : arr) {
    Regime r;
    r.kind = regime_kind_from_string(j.at("kind").get<std::string>());
    r.length_s = j.at("length").get<Index>();
    get_if(j, "drift", r.drift);
    get_if(j, "vol", r.vol);
    out.push_back(r);
  }
  return out;
}

}  // namespace

SegmentationParams PipelineConfig::segmentation_params() const {
  SegmentationParams p = segmentation;
  p.theta = theta;
  p.n_labels = n_labels;
  return p;
}

nlohmann::json PipelineConfig::to_json() const {
  return {
      {"out_dir", out_dir},
      {"seed", seed},
      {"data",
       {{"source", data.source},
        {"csv_path", data.csv_path},
        {"fill", data.fill},
        {"max_gap_s", data.max_gap_s},
        {"split_train", data.split_train},
        {"split_valid", data.split_valid},
        {"synth",
         {{"seed", data.synth.seed},
          {"mid0", data.synth.mid0},
          {"tick", data.synth.tick},
          {"spread_ticks", data.synth.spread_ticks},
          {"depth", data.synth.depth},
          {"start_ts", data.synth.start_ts},
          {"symbol", data.synth.symbol},
          {"regimes", regimes_to_json(data.synth.regimes)}}}}},
      {"grid", {{"max_position", max_position}, {"n_actions", n_actions}}},
      {"fee_rate", fee_rate},
      {"chunk_length", chunk_length},
      {"betas", betas},
      {"epochs_per_beta", epochs_per_beta},
      {"agents_kept_per_beta", agents_kept_per_beta},
      {"theta", theta},
      {"n_labels", n_labels},
      {"segmentation",
       {{"filter_window", segmentation.filter_window},
        {"slope_tol", segmentation.slope_tol},
        {"dtw_tol", segmentation.dtw_tol},
        {"resample_points", segmentation.resample_points}}},
      {"learner",
       {{"lr", learner.lr},
        {"buffer_capacity", learner.buffer_capacity},
        {"minibatch", learner.minibatch},
        {"tau", learner.tau},
        {"gamma", learner.gamma},
        {"hidden", learner.hidden},
        {"alpha0", learner.alpha0},
        {"alpha_half_frac", learner.alpha_half_frac},
        {"kl_temperature", learner.kl_temperature},
        {"eps_start", learner.eps_start},
        {"eps_end", learner.eps_end},
        {"eps_frac", learner.eps_frac},
        {"grad_steps_ratio", learner.grad_steps_ratio},
        {"use_teacher", learner.use_teacher},
        {"use_optimal_actor", learner.use_optimal_actor},
        {"eval_threshold", learner.eval_threshold}}},
      {"router",
       {{"lr", router.lr},
        {"buffer_capacity", router.buffer_capacity},
        {"minibatch", router.minibatch},
        {"tau", router.tau},
        {"gamma", router.gamma},
        {"hidden", router.hidden},
        {"eps_start", router.eps_start},
        {"eps_end", router.eps_end},
        {"eps_frac", router.eps_frac},
        {"grad_steps_ratio", router.grad_steps_ratio},
        {"epochs", router.epochs}}},
      {"backtest",
       {{"macd_span_short", backtest.macd_span_short},
        {"macd_span_mid", backtest.macd_span_mid},
        {"macd_span_long", backtest.macd_span_long},
        {"iv_levels", backtest.iv_levels},
        {"iv_lower", backtest.iv_lower},
        {"iv_upper", backtest.iv_upper}}},
      {"initial_cash", initial_cash},
  };
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
  PipelineConfig cfg;
  get_if(j, "out_dir", cfg.out_dir);
  get_if(j, "seed", cfg.seed);
  if (j.contains("data")) {
    const auto& d = j.at("data");
    get_if(d, "source", cfg.data.source);
    get_if(d, "csv_path", cfg.data.csv_path);
    get_if(d, "fill", cfg.data.fill);
    get_if(d, "max_gap_s", cfg.data.max_gap_s);
    get_if(d, "split_train", cfg.data.split_train);
    get_if(d, "split_valid", cfg.data.split_valid);
    if (d.contains("synth")) {
      const auto& s = d.at("synth");
      get_if(s, "seed", cfg.data.synth.seed);
      get_if(s, "mid0", cfg.data.synth.mid0);
      get_if(s, "tick", cfg.data.synth.tick);
      get_if(s, "spread_ticks", cfg.data.synth.spread_ticks);
      get_if(s, "depth", cfg.data.synth.depth);
      get_if(s, "start_ts", cfg.data.synth.start_ts);
      get_if(s, "symbol", cfg.data.synth.symbol);
      if (s.contains("regimes")) cfg.data.synth.regimes = regimes_from_json(s.at("regimes"));
    }
  }
  if (j.contains("grid")) {
    get_if(j.at("grid"), "max_position", cfg.max_position);
    get_if(j.at("grid"), "n_actions", cfg.n_actions);
  }
  get_if(j, "fee_rate", cfg.fee_rate);
  get_if(j, "chunk_length", cfg.chunk_length);
  get_if(j, "betas", cfg.betas);
  get_if(j, "epochs_per_beta", cfg.epochs_per_beta);
  get_if(j, "agents_kept_per_beta", cfg.agents_kept_per_beta);
  get_if(j, "theta", cfg.theta);
  get_if(j, "n_labels", cfg.n_labels);
  if (j.contains("segmentation")) {
    const auto& s = j.at("segmentation");
    get_if(s, "filter_window", cfg.segmentation.filter_window);
    get_if(s, "slope_tol", cfg.segmentation.slope_tol);
    get_if(s, "dtw_tol", cfg.segmentation.dtw_tol);
    get_if(s, "resample_points", cfg.segmentation.resample_points);
  }
  if (j.contains("learner")) {
    const auto& l = j.at("learner");
    get_if(l, "lr", cfg.learner.lr);
    get_if(l, "buffer_capacity", cfg.learner.buffer_capacity);
    get_if(l, "minibatch", cfg.learner.minibatch);
    get_if(l, "tau", cfg.learner.tau);
    get_if(l, "gamma", cfg.learner.gamma);
    get_if(l, "hidden", cfg.learner.hidden);
    get_if(l, "alpha0", cfg.learner.alpha0);
    get_if(l, "alpha_half_frac", cfg.learner.alpha_half_frac);
    get_if(l, "kl_temperature", cfg.learner.kl_temperature);
    get_if(l, "eps_start", cfg.learner.eps_start);
    get_if(l, "eps_end", cfg.learner.eps_end);
    get_if(l, "eps_frac", cfg.learner.eps_frac);
    get_if(l, "grad_steps_ratio", cfg.learner.grad_steps_ratio);
    get_if(l, "use_teacher", cfg.learner.use_teacher);
    get_if(l, "use_optimal_actor", cfg.learner.use_optimal_actor);
    get_if(l, "eval_threshold", cfg.learner.eval_threshold);
  }
  if (j.contains("router")) {
    const auto& r = j.at("router");
    get_if(r, "lr", cfg.router.lr);
    get_if(r, "buffer_capacity", cfg.router.buffer_capacity);
    get_if(r, "minibatch", cfg.router.minibatch);
    get_if(r, "tau", cfg.router.tau);
    get_if(r, "gamma", cfg.router.gamma);
    get_if(r, "hidden", cfg.router.hidden);
    get_if(r, "eps_start", cfg.router.eps_start);
    get_if(r, "eps_end", cfg.router.eps_end);
    get_if(r, "eps_frac", cfg.router.eps_frac);
    get_if(r, "grad_steps_ratio", cfg.router.grad_steps_ratio);
    get_if(r, "epochs", cfg.router.epochs);
  }
  if (j.contains("backtest")) {
    const auto& b = j.at("backtest");
    get_if(b, "macd_span_short", cfg.backtest.macd_span_short);
    get_if(b, "macd_span_mid", cfg.backtest.macd_span_mid);
    get_if(b, "macd_span_long", cfg.backtest.macd_span_long);
    get_if(b, "iv_levels", cfg.backtest.iv_levels);
    get_if(b, "iv_lower", cfg.backtest.iv_lower);
    get_if(b, "iv_upper", cfg.backtest.iv_upper);
  }
  get_if(j, "initial_cash", cfg.initial_cash);
  return cfg;
}

std::string PipelineConfig::hash() const { return hash_json(to_json()); }

std::vector<Regime> default_desk_regimes(int cycles) {
  // Alternating-sign cycle so every trend boundary leaves an extremum:
  // bull, pullback, rally, bear, then a noisy sideways stretch.
  std::vector<Regime> out;
  for (int c = 0; c < cycles; ++c) {
    out.push_back({RegimeKind::bull, 6000, 2e-5, 8e-5});
    out.push_back({RegimeKind::bear, 6000, -1e-5, 8e-5});
    out.push_back({RegimeKind::bull, 6000, 1e-5, 8e-5});
    out.push_back({RegimeKind::bear, 6000, -2e-5, 8e-5});
    out.push_back({RegimeKind::sideways, 6000, 0.0, 8e-5});
  }
  return out;
}

void apply_desk_preset(PipelineConfig& cfg) {
  cfg.chunk_length = 900;
  cfg.epochs_per_beta = 5;
  cfg.agents_kept_per_beta = 2;
  cfg.router.epochs = 10;
  cfg.learner.minibatch = 256;
  cfg.router.minibatch = 256;
  if (cfg.data.source == "synth" && cfg.data.synth.regimes.empty()) {
    cfg.data.synth.regimes = default_desk_regimes(5);
  }
}

std::vector<Regime> parse_regimes(const std::string& text) {
  std::vector<Regime> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::stringstream fs(item);
    std::string kind, len, drift, vol;
    std::getline(fs, kind, ':');
    std::getline(fs, len, ':');
    if (kind.empty() || len.empty()) {
      throw ConfigError("regime spec must look like kind:length[:drift[:vol]]");
    }
    Regime r;
    r.kind = regime_kind_from_string(kind);
    r.length_s = std::stoll(len);
    switch (r.kind) {
      case RegimeKind::bull: r.drift = 2e-5; break;
      case RegimeKind::bear: r.drift = -2e-5; break;
      case RegimeKind::sideways: r.drift = 0.0; break;
    }
    r.vol = 8e-5;
    if (std::getline(fs, drift, ':') && !drift.empty()) r.drift = std::stod(drift);
    if (std::getline(fs, vol, ':') && !vol.empty()) r.vol = std::stod(vol);
    out.push_back(r);
  }
  if (out.empty()) throw ConfigError("no regimes parsed from '" + text + "'");
  return out;
}

}  // namespace hft::cli
