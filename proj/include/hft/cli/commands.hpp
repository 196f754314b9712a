#pragma once

#include "hft/cli/config.hpp"

#include <string>
#include <vector>

namespace hft::cli {

// Full CLI entry point; returns the process exit code.
//   0 success, 2 config error, 3 data error, 4 upstream-artifact error.
int run(const std::vector<std::string>& args);

void cmd_synth(const PipelineConfig& cfg);
void cmd_ingest(const PipelineConfig& cfg);
void cmd_label(const PipelineConfig& cfg, bool force = false);
void cmd_train_low(const PipelineConfig& cfg, bool force = false);
void cmd_build_pool(const PipelineConfig& cfg, bool force = false);
void cmd_train_router(const PipelineConfig& cfg, bool force = false);
void cmd_backtest(const PipelineConfig& cfg, bool force = false);

}  // namespace hft::cli
