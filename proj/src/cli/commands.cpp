#include "hft/cli/commands.hpp"

#include "hft/backtest/policies.hpp"
#include "hft/backtest/runner.hpp"
#include "hft/io/serde.hpp"
#include "hft/oracle/qstar.hpp"
#include "hft/pool/chunks.hpp"
#include "hft/pool/sampling.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

namespace hft::cli {

namespace {

namespace fs = std::filesystem;

std::string stage_dir(const PipelineConfig& cfg, const std::string& stage) {
  return cfg.out_dir + "/" + stage;
}

void require_artifact(const std::string& path) {
  if (!file_exists(path)) throw ArtifactError("missing upstream artifact: " + path);
}

nlohmann::json load_stage_manifest(const PipelineConfig& cfg, const std::string& stage) {
  const std::string path = stage_dir(cfg, stage) + "/manifest.json";
  require_artifact(path);
  return read_json(path);
}

// Verify the file on disk still matches the hash its producing stage recorded.
void check_hash(const nlohmann::json& producer_manifest, const std::string& file_path,
                const std::string& file_key, bool force) {
  require_artifact(file_path);
  if (force) return;
  const auto& outputs = producer_manifest.at("outputs");
  if (!outputs.contains(file_key)) {
    throw ArtifactError("producing stage does not list output " + file_key);
  }
  if (outputs.at(file_key).get<std::string>() != hash_file(file_path)) {
    throw ArtifactError("hash mismatch for " + file_path +
                        "; rerun upstream stages or pass --force");
  }
}

void write_stage_manifest(const PipelineConfig& cfg, const std::string& stage,
                          const nlohmann::json& inputs,
                          const std::vector<std::string>& output_files,
                          nlohmann::json extra = {}) {
  nlohmann::json outputs = nlohmann::json::object();
  for (const auto& f : output_files) {
    outputs[f] = hash_file(stage_dir(cfg, stage) + "/" + f);
  }
  nlohmann::json m = {{"stage", stage},
                      {"config_hash", cfg.hash()},
                      {"inputs", inputs},
                      {"outputs", outputs}};
  if (!extra.is_null()) {
    for (auto& [k, v] : extra.items()) m[k] = v;
  }
  write_json(stage_dir(cfg, stage) + "/manifest.json", m);
}

struct SplitSeries {
  MarketSeries full;
  Index train_end = 0;
  Index valid_end = 0;

  MarketSeries train() const { return full.slice(0, train_end); }
  MarketSeries valid() const { return full.slice(train_end, valid_end); }
  MarketSeries test() const { return full.slice(valid_end, full.n()); }
};

Index snap_minute(Index t) { return t / 60 * 60; }

SplitSeries load_data(const PipelineConfig& cfg, bool force) {
  const nlohmann::json m = load_stage_manifest(cfg, "data");
  const std::string series_path = stage_dir(cfg, "data") + "/series.csv";
  check_hash(m, series_path, "series.csv", force);

  SplitSeries out;
  CsvSpec spec;
  spec.fill = CsvSpec::Fill::none;
  out.full = load_market_csv(series_path, spec);
  out.train_end = m.at("split").at("train_end").get<Index>();
  out.valid_end = m.at("split").at("valid_end").get<Index>();
  return out;
}

void persist_series(const PipelineConfig& cfg, const MarketSeries& series) {
  const std::string dir = stage_dir(cfg, "data");
  fs::create_directories(dir);
  save_market_csv(series, dir + "/series.csv");

  const Index n = series.n();
  const Index train_end = snap_minute(static_cast<Index>(n * cfg.data.split_train));
  const Index valid_end =
      snap_minute(static_cast<Index>(n * (cfg.data.split_train + cfg.data.split_valid)));
  if (train_end <= 0 || train_end >= valid_end || valid_end >= n) {
    throw ConfigError("data split fractions leave an empty span");
  }
  write_stage_manifest(
      cfg, "data", nlohmann::json::object(), {"series.csv"},
      {{"split", {{"train_end", train_end}, {"valid_end", valid_end}, {"n", n}}},
       {"symbol", series.symbol}});
}

double initial_cash_for(const PipelineConfig& cfg, const MarketSeries& series, Index begin) {
  return cfg.initial_cash > 0.0 ? cfg.initial_cash
                                : cfg.max_position * series.mid(begin);
}

std::string agent_file(int beta_index, int epoch) {
  return "agents/beta" + std::to_string(beta_index) + "_ep" + std::to_string(epoch) + ".bin";
}

// Segments are stored with absolute timestamps; map back to minute indices.
std::vector<Segment> read_labels_csv(const std::string& path, std::int64_t valid_start_ts) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ArtifactError("labels file is empty: " + path);
  std::vector<Segment> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream fs(line);
    std::string start_s, end_s, slope_s, label_s;
    std::getline(fs, start_s, ',');
    std::getline(fs, end_s, ',');
    std::getline(fs, slope_s, ',');
    std::getline(fs, label_s, ',');
    Segment s;
    s.begin = (std::stoll(start_s) - valid_start_ts) / 60;
    s.end = (std::stoll(end_s) - valid_start_ts) / 60;
    s.slope = std::stod(slope_s);
    s.label = std::stoi(label_s);
    out.push_back(s);
  }
  return out;
}

AgentPool load_pool(const PipelineConfig& cfg, bool force) {
  const nlohmann::json m = load_stage_manifest(cfg, "pool");
  const std::string pool_path = stage_dir(cfg, "pool") + "/pool.json";
  check_hash(m, pool_path, "pool.json", force);
  const nlohmann::json pj = read_json(pool_path);

  const ActionGrid grid(pj.at("grid").at("max_position").get<double>(),
                        pj.at("grid").at("n_actions").get<int>());
  AgentPool pool(grid, pj.at("labels").get<int>());

  std::map<std::string, std::shared_ptr<const LowPolicy>> cache;
  const auto flat = std::make_shared<ConstantPolicy>(0);
  for (const auto& cj : pj.at("cells")) {
    const int label = cj.at("label").get<int>();
    const int pos = cj.at("position_index").get<int>();
    PoolCell& cell = pool.cell(label - 1, pos);
    cell.checkpoint_ref = cj.at("agent_checkpoint").get<std::string>();
    cell.mean_return = cj.at("mean_return").get<double>();
    cell.n_segments = cj.at("n_segments").get<int>();
    if (cell.checkpoint_ref == "flat") {
      cell.policy = flat;
      cell.agent_id = -1;
    } else {
      auto it = cache.find(cell.checkpoint_ref);
      if (it == cache.end()) {
        const std::string full_path = cfg.out_dir + "/" + cell.checkpoint_ref;
        require_artifact(full_path);
        it = cache
                 .emplace(cell.checkpoint_ref,
                          std::make_shared<NetPolicy>(
                              std::make_shared<ValueNet>(ValueNet::load(full_path))))
                 .first;
      }
      cell.policy = it->second;
      cell.agent_id = 0;
    }
  }
  return pool;
}

std::string training_log_csv(const std::vector<EpochLog>& log) {
  std::ostringstream out;
  out << "epoch,steps,loss_td,loss_kl,alpha,eval_reward,ahl\n";
  for (const auto& l : log) {
    out << l.epoch << ',' << l.env_steps << ',' << format_double(l.loss_td) << ','
        << format_double(l.loss_kl) << ',' << format_double(l.alpha) << ','
        << format_double(l.eval_reward) << ',' << format_double(l.ahl) << '\n';
  }
  return out.str();
}

void emit_backtest_outputs(const PipelineConfig& cfg, const std::string& name,
                           const BacktestResult& result, std::vector<std::string>& files) {
  const std::string dir = stage_dir(cfg, "backtest");
  write_file(dir + "/equity_" + name + ".csv", equity_csv(result.curve));
  write_file(dir + "/trades_" + name + ".csv", trade_log_csv(result.trades));
  nlohmann::json rep = result.metrics.to_json();
  rep["policy"] = name;
  rep["clip_count"] = result.clip_count;
  write_json(dir + "/report_" + name + ".json", rep);
  files.push_back("equity_" + name + ".csv");
  files.push_back("trades_" + name + ".csv");
  files.push_back("report_" + name + ".json");
}

}  // namespace

void cmd_synth(const PipelineConfig& cfg) {
  SynthSpec spec = cfg.data.synth;
  if (spec.regimes.empty()) spec.regimes = default_desk_regimes(5);
  const MarketSeries series = synth_market(spec);
  persist_series(cfg, series);
  std::cout << "synth: wrote " << series.n() << " seconds to " << stage_dir(cfg, "data")
            << "/series.csv\n";
}

void cmd_ingest(const PipelineConfig& cfg) {
  if (cfg.data.csv_path.empty()) throw ConfigError("ingest needs data.csv_path");
  CsvSpec spec;
  spec.fill = cfg.data.fill == "hold" ? CsvSpec::Fill::hold : CsvSpec::Fill::none;
  spec.max_gap_s = cfg.data.max_gap_s;
  const MarketSeries series = load_market_csv(cfg.data.csv_path, spec);
  persist_series(cfg, series);
  std::cout << "ingest: validated " << series.n() << " seconds from " << cfg.data.csv_path
            << "\n";
}

void cmd_label(const PipelineConfig& cfg, bool force) {
  const SplitSeries data = load_data(cfg, force);
  const MarketSeries valid = data.valid();
  Vec closes(valid.n_minutes());
  for (Index i = 0; i < closes.size(); ++i) {
    closes[i] = valid.minute_bars[static_cast<std::size_t>(i)].close;
  }
  const auto segments = segment_and_label(closes, cfg.segmentation_params());

  std::ostringstream out;
  out << "start_ts,end_ts,slope,label,label_name\n";
  const std::int64_t t0 = valid.start_ts();
  for (const auto& s : segments) {
    out << (t0 + s.begin * 60) << ',' << (t0 + s.end * 60) << ',' << format_double(s.slope)
        << ',' << s.label << ',' << label_name(s.label, cfg.n_labels) << '\n';
  }
  write_file(stage_dir(cfg, "label") + "/labels.csv", out.str());

  write_stage_manifest(cfg, "label",
                       {{"series.csv", hash_file(stage_dir(cfg, "data") + "/series.csv")}},
                       {"labels.csv"}, {{"n_segments", segments.size()}});
  std::cout << "label: " << segments.size() << " segments over the validation span\n";
}

void cmd_train_low(const PipelineConfig& cfg, bool force) {
  const SplitSeries data = load_data(cfg, force);
  const MarketSeries train = data.train();
  const Mat features = low_feature_matrix(train);
  const ActionGrid grid = cfg.grid();

  const auto chunks = chunk_dataset(train, cfg.chunk_length);
  Vec returns(static_cast<Index>(chunks.size()));
  for (Index i = 0; i < returns.size(); ++i) returns[i] = chunks[static_cast<std::size_t>(i)].ret;
  const SamplingModel model = SamplingModel::fit(returns, cfg.theta);

  std::map<int, QStarTable> qstar_cache;
  const std::string dir = stage_dir(cfg, "train_low");
  fs::create_directories(dir + "/agents");

  nlohmann::json candidates = nlohmann::json::array();
  std::vector<std::string> out_files;
  std::vector<EpochLog> all_logs;

  for (std::size_t bi = 0; bi < cfg.betas.size(); ++bi) {
    const double beta = cfg.betas[bi];
    TrainConfig tcfg = cfg.learner;
    tcfg.seed = cfg.seed * 7919 + bi;

    struct Snapshot {
      int epoch;
      double eval;
      double ahl;
    };
    std::vector<Snapshot> snaps;

    TaskSource source = [&](int /*epoch*/, std::mt19937_64& rng) {
      const int ci = sample_chunks(chunks, beta, model, 1, rng)[0];
      const Chunk& chunk = chunks[static_cast<std::size_t>(ci)];
      const Index begin = std::max<Index>(chunk.begin, kFeatureWindow);
      auto it = qstar_cache.find(ci);
      if (it == qstar_cache.end()) {
        it = qstar_cache.emplace(ci, build_q_star(train, begin, chunk.end, grid, cfg.fee_rate))
                 .first;
      }
      LowLevelEnv env(train, features, grid, cfg.fee_rate, begin, chunk.end,
                      initial_cash_for(cfg, train, begin));
      return EpochTask{std::move(env), &it->second};
    };

    EpochHook hook = [&](const EpochLog& log, const ValueNet& net) {
      net.save(dir + "/" + agent_file(static_cast<int>(bi), log.epoch));
      snaps.push_back({log.epoch, log.eval_reward, log.ahl});
    };

    const TrainResult result = train_low_level(cfg.epochs_per_beta, source, tcfg, hook);
    for (const auto& l : result.log) all_logs.push_back(l);
    write_file(dir + "/training_log_b" + std::to_string(bi) + ".csv",
               training_log_csv(result.log));
    out_files.push_back("training_log_b" + std::to_string(bi) + ".csv");

    const int keep = std::min<int>(cfg.agents_kept_per_beta, static_cast<int>(snaps.size()));
    for (int k = static_cast<int>(snaps.size()) - keep; k < static_cast<int>(snaps.size());
         ++k) {
      const Snapshot& s = snaps[static_cast<std::size_t>(k)];
      const std::string rel = "train_low/" + agent_file(static_cast<int>(bi), s.epoch);
      candidates.push_back({{"id", static_cast<int>(candidates.size())},
                            {"ref", rel},
                            {"beta", beta},
                            {"epoch", s.epoch},
                            {"eval_reward", s.eval},
                            {"ahl", s.ahl}});
      out_files.push_back(agent_file(static_cast<int>(bi), s.epoch));

      nlohmann::json side = {{"schema_id", FeatureSchema::low().schema_id},
                             {"grid",
                              {{"max_position", grid.max_position()},
                               {"n_actions", grid.n_actions()}}},
                             {"config_hash", cfg.hash()},
                             {"beta", beta},
                             {"epoch", s.epoch},
                             {"eval_reward", s.eval},
                             {"ahl", s.ahl}};
      write_json(dir + "/" + agent_file(static_cast<int>(bi), s.epoch) + ".json", side);
    }
  }

  write_json(dir + "/candidates.json", candidates);
  out_files.push_back("candidates.json");
  write_stage_manifest(cfg, "train_low",
                       {{"series.csv", hash_file(stage_dir(cfg, "data") + "/series.csv")}},
                       out_files, {{"n_chunks", chunks.size()}});
  std::cout << "train-low: " << candidates.size() << " candidate agents kept\n";
}

void cmd_build_pool(const PipelineConfig& cfg, bool force) {
  const SplitSeries data = load_data(cfg, force);
  const nlohmann::json label_manifest = load_stage_manifest(cfg, "label");
  const nlohmann::json train_manifest = load_stage_manifest(cfg, "train_low");
  const std::string labels_path = stage_dir(cfg, "label") + "/labels.csv";
  check_hash(label_manifest, labels_path, "labels.csv", force);
  const std::string candidates_path = stage_dir(cfg, "train_low") + "/candidates.json";
  check_hash(train_manifest, candidates_path, "candidates.json", force);

  const MarketSeries valid = data.valid();
  const Mat features = low_feature_matrix(valid);
  const auto segments = read_labels_csv(labels_path, valid.start_ts());

  std::vector<AgentCandidate> candidates;
  for (const auto& cj : read_json(candidates_path)) {
    AgentCandidate c;
    c.id = cj.at("id").get<int>();
    c.ref = cj.at("ref").get<std::string>();
    const std::string full_path = cfg.out_dir + "/" + c.ref;
    check_hash(train_manifest, full_path,
               c.ref.substr(std::string("train_low/").size()), force);
    c.policy = std::make_shared<NetPolicy>(std::make_shared<ValueNet>(ValueNet::load(full_path)));
    candidates.push_back(std::move(c));
  }

  PoolBuildInputs inputs{valid, features, segments, cfg.fee_rate};
  const AgentPool pool = build_agent_pool(candidates, inputs, cfg.grid(), cfg.n_labels);

  // Rewrite cell refs to candidate checkpoint paths.
  nlohmann::json pj = pool.manifest();
  for (auto& cell : pj.at("cells")) {
    const int label = cell.at("label").get<int>();
    const int pos = cell.at("position_index").get<int>();
    const PoolCell& c = pool.cell(label - 1, pos);
    cell["agent_checkpoint"] = c.agent_id < 0 ? "flat" : candidates[static_cast<std::size_t>(
                                                             c.agent_id)].ref;
  }
  write_json(stage_dir(cfg, "pool") + "/pool.json", pj);

  write_stage_manifest(cfg, "pool",
                       {{"labels.csv", hash_file(labels_path)},
                        {"candidates.json", hash_file(candidates_path)},
                        {"series.csv", hash_file(stage_dir(cfg, "data") + "/series.csv")}},
                       {"pool.json"});
  std::cout << "build-pool: " << pool.m() << "x" << pool.n() << " cells filled\n";
}

void cmd_train_router(const PipelineConfig& cfg, bool force) {
  const SplitSeries data = load_data(cfg, force);
  const AgentPool pool = load_pool(cfg, force);
  const MarketSeries train = data.train();
  const Mat low_features = low_feature_matrix(train);
  const Mat high_features = high_feature_matrix(train);

  const Index minute_end = (train.n() - 1) / 60;
  RouterConfig rcfg = cfg.router;
  rcfg.seed = cfg.seed * 104729 + 1;

  RouterEnvSource source = [&](int, std::mt19937_64&) {
    return HighLevelEnv(train, low_features, high_features, pool, cfg.fee_rate,
                        kFeatureWindow, minute_end,
                        initial_cash_for(cfg, train, kFeatureWindow * 60));
  };
  const RouterResult result = train_router(source, rcfg);

  const std::string dir = stage_dir(cfg, "router");
  fs::create_directories(dir);
  result.net.save(dir + "/router.bin");
  write_json(dir + "/router.json",
             {{"schema_id", FeatureSchema::high().schema_id},
              {"labels", pool.m()},
              {"pool_hash", hash_file(stage_dir(cfg, "pool") + "/pool.json")},
              {"config_hash", cfg.hash()},
              {"final_eval_reward", result.log.empty() ? 0.0 : result.log.back().eval_reward}});
  write_file(dir + "/training_log.csv", training_log_csv(result.log));

  write_stage_manifest(cfg, "router",
                       {{"pool.json", hash_file(stage_dir(cfg, "pool") + "/pool.json")},
                        {"series.csv", hash_file(stage_dir(cfg, "data") + "/series.csv")}},
                       {"router.bin", "router.json", "training_log.csv"});
  std::cout << "train-router: done, final eval reward "
            << (result.log.empty() ? 0.0 : result.log.back().eval_reward) << "\n";
}

void cmd_backtest(const PipelineConfig& cfg, bool force) {
  const SplitSeries data = load_data(cfg, force);
  const AgentPool pool = load_pool(cfg, force);
  const nlohmann::json router_manifest = load_stage_manifest(cfg, "router");
  const std::string router_path = stage_dir(cfg, "router") + "/router.bin";
  check_hash(router_manifest, router_path, "router.bin", force);
  const ValueNet router = ValueNet::load(router_path);

  const MarketSeries test = data.test();
  const Mat low_features = low_feature_matrix(test);
  const Mat high_features = high_feature_matrix(test);
  const ActionGrid grid = cfg.grid();
  const double cash0 = initial_cash_for(cfg, test, kFeatureWindow);

  const std::string dir = stage_dir(cfg, "backtest");
  fs::create_directories(dir);
  std::vector<std::string> files;

  struct Row {
    std::string name;
    MetricsReport metrics;
  };
  std::vector<Row> rows;

  {
    BacktestResult r = run_backtest_router(router, pool, test, low_features, high_features,
                                           cfg.fee_rate, cash0);
    write_file(dir + "/selections_router.csv", selection_csv(r.selections));
    files.push_back("selections_router.csv");
    emit_backtest_outputs(cfg, "router", r, files);
    rows.push_back({"router", r.metrics});
  }

  // distinct pool agents
  std::map<std::string, std::shared_ptr<const LowPolicy>> agents;
  for (int l = 0; l < pool.m(); ++l) {
    for (int p = 0; p < pool.n(); ++p) {
      const PoolCell& c = pool.cell(l, p);
      if (c.checkpoint_ref != "flat") agents.emplace(c.checkpoint_ref, c.policy);
    }
  }
  for (const auto& [ref, policy] : agents) {
    std::string name = fs::path(ref).stem().string();
    BacktestResult r = run_backtest(*policy, test, &low_features, cfg.fee_rate, grid, cash0);
    emit_backtest_outputs(cfg, "pool_" + name, r, files);
    rows.push_back({"pool_" + name, r.metrics});
  }

  const auto run_rule = [&](const std::string& name, const LowPolicy& policy) {
    BacktestResult r = run_backtest(policy, test, nullptr, cfg.fee_rate, grid, cash0);
    emit_backtest_outputs(cfg, name, r, files);
    rows.push_back({name, r.metrics});
  };
  run_rule("buy_hold", *buy_and_hold(grid.n_actions()));
  run_rule("flat", *always_flat());
  run_rule("macd", *macd_strategy(test, cfg.backtest.macd_span_short,
                                  cfg.backtest.macd_span_mid, cfg.backtest.macd_span_long,
                                  grid.n_actions()));
  run_rule("iv", *iv_strategy(test, cfg.backtest.iv_levels, cfg.backtest.iv_lower,
                              cfg.backtest.iv_upper, grid.n_actions()));

  std::ostringstream cmp;
  cmp << "policy,tr,asr,acr,asor,avol,mdd,trades,ahl\n";
  for (const auto& row : rows) {
    const MetricsReport& m = row.metrics;
    cmp << row.name << ',' << format_double(m.tr) << ',' << format_double(m.asr) << ','
        << format_double(m.acr) << ',' << format_double(m.asor) << ','
        << format_double(m.avol) << ',' << format_double(m.mdd) << ',' << m.trade_count
        << ',' << format_double(m.avg_holding_s) << '\n';
  }
  write_file(dir + "/comparison.csv", cmp.str());
  files.push_back("comparison.csv");

  write_stage_manifest(cfg, "backtest",
                       {{"router.bin", hash_file(router_path)},
                        {"pool.json", hash_file(stage_dir(cfg, "pool") + "/pool.json")},
                        {"series.csv", hash_file(stage_dir(cfg, "data") + "/series.csv")}},
                       files);
  std::cout << "backtest: " << rows.size() << " policies compared\n";
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"hierarchical second-level trading research engine"};
  app.require_subcommand(1);

  std::string config_path, preset, out_dir, regimes_text, csv_path, fill;
  std::uint64_t seed = 0;
  bool force = false;
  bool has_seed = false;

  auto add_common = [&](CLI::App* cmd, const char* seed_help) {
    cmd->add_option("--config", config_path, "pipeline config JSON");
    cmd->add_option("--preset", preset, "configuration preset (desk)");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed, seed_help)->each([&](const std::string&) {
      has_seed = true;
    });
    cmd->add_flag("--force", force, "skip upstream hash checks");
  };

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic market");
  add_common(synth, "market generator seed");
  synth->add_option("--regimes", regimes_text, "kind:length[:drift[:vol]],...");

  CLI::App* ingest = app.add_subcommand("ingest", "validate and persist a CSV market");
  add_common(ingest, "training seed");
  ingest->add_option("--csv", csv_path, "input CSV path");
  ingest->add_option("--fill", fill, "gap handling: none | hold");

  CLI::App* label = app.add_subcommand("label", "segment and label the validation span");
  CLI::App* train_low = app.add_subcommand("train-low", "stage I: train second-level agents");
  CLI::App* build_pool = app.add_subcommand("build-pool", "stage II: select the agent pool");
  CLI::App* train_router = app.add_subcommand("train-router", "stage III: train the router");
  CLI::App* backtest = app.add_subcommand("backtest", "run policies over the test span");
  for (CLI::App* cmd : {label, train_low, build_pool, train_router, backtest}) {
    add_common(cmd, "training seed");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    PipelineConfig cfg;
    if (!config_path.empty()) cfg = PipelineConfig::from_json(read_json(config_path));
    if (preset == "desk") {
      apply_desk_preset(cfg);
    } else if (!preset.empty()) {
      throw ConfigError("unknown preset '" + preset + "'");
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (has_seed) {
      // On synth the seed drives the generator; elsewhere it scopes training.
      if (synth->parsed()) {
        cfg.data.synth.seed = seed;
      } else {
        cfg.seed = seed;
      }
    }
    if (!regimes_text.empty()) cfg.data.synth.regimes = parse_regimes(regimes_text);
    if (!csv_path.empty()) {
      cfg.data.csv_path = csv_path;
      cfg.data.source = "csv";
    }
    if (!fill.empty()) cfg.data.fill = fill;

    if (synth->parsed()) {
      cmd_synth(cfg);
    } else if (ingest->parsed()) {
      cmd_ingest(cfg);
    } else if (label->parsed()) {
      cmd_label(cfg, force);
    } else if (train_low->parsed()) {
      cmd_train_low(cfg, force);
    } else if (build_pool->parsed()) {
      cmd_build_pool(cfg, force);
    } else if (train_router->parsed()) {
      cmd_train_router(cfg, force);
    } else if (backtest->parsed()) {
      cmd_backtest(cfg, force);
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const ArtifactError& e) {
    std::cerr << "artifact error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hft::cli
