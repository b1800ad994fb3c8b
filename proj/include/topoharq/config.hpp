#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "topoharq/channel.hpp"
#include "topoharq/extract.hpp"

namespace topoharq {

/// Unusable configuration (unknown key, bad value, missing input). The CLI
/// maps this to exit code 1; operational failures exit with 2.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything the commands need, with working defaults. Loaded from a
/// key = value file, then optionally overridden by flags; the environment
/// variable TOPOHARQ_WORKERS trumps the worker count from both.
struct ExperimentConfig {
  std::string corpus;
  std::string model;  // detector file consumed by sweep
  std::string channel = "awgn";
  std::vector<double> snr_db = {0, 3, 10, 20};
  std::vector<double> rate = {1.0 / 3.0};
  std::vector<int> embedding_dim;  // alternative rate spec, c / (6 * 4^stages)
  int stages = 2;
  double nu = 128;
  int n_max = 3;
  uint64_t seed = 1;
  int select_count = 28;
  double quality_target_db = 20;
  double calibration_snr_db = 10;
  int workers = 0;
  int betti_samples = 6;
  int landscape_samples = 100;
  int heat_grid = 32;

  FadingKind fading() const;
  PipelineConfig pipeline() const;
  /// Rates to sweep: `rate` unless `embedding_dim` entries were given.
  std::vector<double> resolved_rates() const;
  /// Worker count after the environment override.
  int resolved_workers() const;
};

/// Parse a config file: one `key = value` per line, `#` comments, lists
/// comma-separated. Unknown keys are config errors.
ExperimentConfig load_config(const std::string& path);

/// Apply one key/value pair on top (same key grammar as the file).
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Resolved (key, value) pairs embedded into every output file.
std::vector<std::pair<std::string, std::string>> resolved_entries(const ExperimentConfig& cfg);

/// Decimal form with 17 significant digits; round-trips any double.
std::string format_real(double v);

}  // namespace topoharq
