#include "topoharq/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "topoharq/codec.hpp"

namespace topoharq {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (start <= value.size()) {
    size_t comma = value.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(trim(value.substr(start)));
      break;
    }
    parts.push_back(trim(value.substr(start, comma - start)));
    start = comma + 1;
  }
  return parts;
}

double parse_real(const std::string& key, const std::string& value) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != value.size()) throw config_error(key + ": not a number: '" + value + "'");
  return v;
}

long parse_int(const std::string& key, const std::string& value) {
  size_t used = 0;
  long v = 0;
  try {
    v = std::stol(value, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != value.size()) throw config_error(key + ": not an integer: '" + value + "'");
  return v;
}

std::vector<double> parse_real_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const std::string& p : split_list(value)) out.push_back(parse_real(key, p));
  if (out.empty()) throw config_error(key + ": empty list");
  return out;
}

std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_real(v[i]);
  }
  return out;
}

}  // namespace

FadingKind ExperimentConfig::fading() const {
  if (channel == "awgn") return FadingKind::awgn;
  if (channel == "rayleigh") return FadingKind::rayleigh;
  throw config_error("channel: expected awgn or rayleigh, got '" + channel + "'");
}

PipelineConfig ExperimentConfig::pipeline() const {
  PipelineConfig p;
  p.nu = nu;
  p.signatures.betti_samples = betti_samples;
  p.signatures.landscape_samples = landscape_samples;
  p.signatures.heat_grid = heat_grid;
  return p;
}

std::vector<double> ExperimentConfig::resolved_rates() const {
  if (embedding_dim.empty()) return rate;
  std::vector<double> out;
  for (int c : embedding_dim) out.push_back(rate_for_embedding_dim(c, stages));
  return out;
}

int ExperimentConfig::resolved_workers() const {
  if (const char* env = std::getenv("TOPOHARQ_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 0) return static_cast<int>(v);
    throw config_error("TOPOHARQ_WORKERS: not a worker count: '" + std::string(env) + "'");
  }
  return workers;
}

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "corpus") {
    cfg.corpus = value;
  } else if (key == "model") {
    cfg.model = value;
  } else if (key == "channel") {
    cfg.channel = value;
    cfg.fading();  // validate now
  } else if (key == "snr-db") {
    cfg.snr_db = parse_real_list(key, value);
  } else if (key == "rate") {
    cfg.rate = parse_real_list(key, value);
    cfg.embedding_dim.clear();
  } else if (key == "embedding-dim") {
    cfg.embedding_dim.clear();
    for (const std::string& p : split_list(value))
      cfg.embedding_dim.push_back(static_cast<int>(parse_int(key, p)));
  } else if (key == "stages") {
    cfg.stages = static_cast<int>(parse_int(key, value));
  } else if (key == "nu") {
    cfg.nu = parse_real(key, value);
    if (!(cfg.nu >= 0 && cfg.nu <= 255)) throw config_error("nu: must lie in [0, 255]");
  } else if (key == "n-max") {
    cfg.n_max = static_cast<int>(parse_int(key, value));
    if (cfg.n_max < 1) throw config_error("n-max: must be >= 1");
  } else if (key == "seed") {
    cfg.seed = static_cast<uint64_t>(parse_int(key, value));
  } else if (key == "select-count") {
    cfg.select_count = static_cast<int>(parse_int(key, value));
    if (cfg.select_count < 1) throw config_error("select-count: must be >= 1");
  } else if (key == "quality-target-db") {
    cfg.quality_target_db = parse_real(key, value);
  } else if (key == "calibration-snr-db") {
    cfg.calibration_snr_db = parse_real(key, value);
  } else if (key == "workers") {
    cfg.workers = static_cast<int>(parse_int(key, value));
    if (cfg.workers < 0) throw config_error("workers: must be >= 0");
  } else if (key == "betti-samples") {
    cfg.betti_samples = static_cast<int>(parse_int(key, value));
    if (cfg.betti_samples < 2) throw config_error("betti-samples: must be >= 2");
  } else if (key == "landscape-samples") {
    cfg.landscape_samples = static_cast<int>(parse_int(key, value));
    if (cfg.landscape_samples < 1) throw config_error("landscape-samples: must be >= 1");
  } else if (key == "heat-grid") {
    cfg.heat_grid = static_cast<int>(parse_int(key, value));
    if (cfg.heat_grid < 1) throw config_error("heat-grid: must be >= 1");
  } else {
    throw config_error("unknown config key '" + key + "'");
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file " + path);
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw config_error(path + ":" + std::to_string(lineno) + ": empty key");
    apply_override(cfg, key, value);
  }
  return cfg;
}

std::vector<std::pair<std::string, std::string>> resolved_entries(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("corpus", cfg.corpus);
  if (!cfg.model.empty()) out.emplace_back("model", cfg.model);
  out.emplace_back("channel", cfg.channel);
  out.emplace_back("snr-db", join_reals(cfg.snr_db));
  out.emplace_back("rate", join_reals(cfg.resolved_rates()));
  out.emplace_back("nu", format_real(cfg.nu));
  out.emplace_back("n-max", std::to_string(cfg.n_max));
  out.emplace_back("seed", std::to_string(cfg.seed));
  out.emplace_back("select-count", std::to_string(cfg.select_count));
  out.emplace_back("quality-target-db", format_real(cfg.quality_target_db));
  out.emplace_back("calibration-snr-db", format_real(cfg.calibration_snr_db));
  out.emplace_back("workers", std::to_string(cfg.resolved_workers()));
  out.emplace_back("betti-samples", std::to_string(cfg.betti_samples));
  out.emplace_back("landscape-samples", std::to_string(cfg.landscape_samples));
  out.emplace_back("heat-grid", std::to_string(cfg.heat_grid));
  return out;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace topoharq
