#include "topoharq/runner.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "topoharq/harq.hpp"
#include "topoharq/metrics.hpp"

namespace topoharq {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

void write_config_header(std::ostream& out, const ExperimentConfig& cfg) {
  for (const auto& [key, value] : resolved_entries(cfg)) out << "# " << key << " = " << value << "\n";
}

ordered_json config_record(const ExperimentConfig& cfg) {
  ordered_json j;
  for (const auto& [key, value] : resolved_entries(cfg)) j[key] = value;
  return j;
}

std::ofstream open_output(const std::string& out_dir, const std::string& name) {
  fs::create_directories(out_dir);
  fs::path p = fs::path(out_dir) / name;
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

bool has_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".pgm" || ext == ".ppm";
}

// All corpus images must share one shape for a common symbol budget.
void require_uniform_shape(const std::vector<CorpusEntry>& corpus) {
  for (const CorpusEntry& e : corpus)
    if (e.image.height != corpus[0].image.height || e.image.width != corpus[0].image.width)
      throw config_error("corpus images must share one size; " + e.name + " differs");
}

// Feature tokens carry commas ("height(1,0)|..."), so CSV cells that need
// it get RFC 4180 quoting.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<RgbImage> images_of(const std::vector<CorpusEntry>& corpus) {
  std::vector<RgbImage> out;
  out.reserve(corpus.size());
  for (const CorpusEntry& e : corpus) out.push_back(e.image);
  return out;
}

}  // namespace

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  if (dir.empty()) throw config_error("no corpus directory configured");
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw config_error("corpus is not a directory: " + dir);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && has_image_extension(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  if (files.empty()) throw config_error("corpus holds no .png/.pgm/.ppm images: " + dir);

  std::vector<CorpusEntry> corpus;
  corpus.reserve(files.size());
  for (const fs::path& p : files) corpus.push_back({p.filename().string(), load_image(p.string())});
  return corpus;
}

void run_extract(const ExperimentConfig& cfg, const std::string& out_dir) {
  std::vector<CorpusEntry> corpus = load_corpus(cfg.corpus);
  PipelineConfig pipeline = cfg.pipeline();
  std::vector<std::vector<double>> features =
      extract_corpus(images_of(corpus), pipeline, cfg.resolved_workers());

  std::ofstream out = open_output(out_dir, "features.csv");
  write_config_header(out, cfg);
  out << "image";
  for (const FeatureDescriptor& d :
       feature_layout(pipeline.filtrations.names(), pipeline.signatures))
    out << "," << csv_field(d.token());
  out << "\n";
  for (size_t i = 0; i < corpus.size(); ++i) {
    out << csv_field(corpus[i].name);
    for (double v : features[i]) out << "," << format_real(v);
    out << "\n";
  }
}

void save_detector(const DetectorModel& model, const ExperimentConfig& cfg,
                   const std::string& path) {
  ordered_json j;
  j["config"] = config_record(cfg);
  j["mask"] = model.mask;
  j["means"] = model.mean;
  j["stds"] = model.stdev;
  j["chi"] = model.chi;
  j["distance"] = model.distance;
  j["greedy_bound"] = model.greedy_bound;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

DetectorModel load_detector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open detector file " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw config_error("detector file " + path + " is not JSON: " + e.what());
  }
  DetectorModel m;
  try {
    m.mask = j.at("mask").get<std::vector<int>>();
    m.mean = j.at("means").get<std::vector<double>>();
    m.stdev = j.at("stds").get<std::vector<double>>();
    m.chi = j.at("chi").get<double>();
    m.distance = j.at("distance").get<std::string>();
    m.greedy_bound = j.value("greedy_bound", 0.0);
  } catch (const std::exception& e) {
    throw config_error("detector file " + path + " is missing fields: " + e.what());
  }
  if (m.mask.size() != m.mean.size() || m.mask.size() != m.stdev.size())
    throw config_error("detector file " + path + " has mismatched field lengths");
  if (m.distance != "rms")
    throw config_error("detector file " + path + " uses unknown distance " + m.distance);
  return m;
}

void run_calibrate(const ExperimentConfig& cfg, const std::string& out_dir) {
  if (cfg.select_count != 2 * CodecBudget::feature_symbols)
    throw config_error("select-count must be " +
                       std::to_string(2 * CodecBudget::feature_symbols) +
                       " to fill the transmitted feature tail");
  std::vector<CorpusEntry> corpus = load_corpus(cfg.corpus);
  require_uniform_shape(corpus);

  CalibrationSettings settings;
  settings.pipeline = cfg.pipeline();
  settings.budget = make_budget(corpus[0].image.height, corpus[0].image.width,
                                cfg.resolved_rates().front());
  settings.channel = make_channel(cfg.fading(), cfg.calibration_snr_db, cfg.seed);
  settings.select_count = cfg.select_count;
  settings.quality_target_db = cfg.quality_target_db;
  settings.seed = cfg.seed;
  settings.workers = cfg.resolved_workers();

  BlockDctCodec codec;
  CalibrationReport report = calibrate(images_of(corpus), codec, settings);

  fs::create_directories(out_dir);
  save_detector(report.model, cfg, (fs::path(out_dir) / "detector.json").string());

  ordered_json mask_json;
  mask_json["config"] = config_record(cfg);
  mask_json["indices"] = report.model.mask;
  mask_json["greedy_bound"] = report.model.greedy_bound;
  std::ofstream mask_out = open_output(out_dir, "selection_mask.json");
  mask_out << mask_json.dump(2) << "\n";
}

void run_sweep(const ExperimentConfig& cfg, const std::string& out_dir) {
  if (cfg.model.empty())
    throw config_error("sweep needs a calibrated detector; set model = <detector.json>");
  DetectorModel model = load_detector(cfg.model);
  std::vector<CorpusEntry> corpus = load_corpus(cfg.corpus);
  require_uniform_shape(corpus);

  std::vector<double> rates = cfg.resolved_rates();
  struct Task {
    size_t image, snr, rate;
  };
  std::vector<Task> tasks;
  for (size_t i = 0; i < corpus.size(); ++i)
    for (size_t s = 0; s < cfg.snr_db.size(); ++s)
      for (size_t r = 0; r < rates.size(); ++r) tasks.push_back({i, s, r});

  BlockDctCodec codec;
  PipelineConfig pipeline = cfg.pipeline();
  struct Row {
    SessionResult session;
    double ms_ssim_final = 0;
  };
  std::vector<Row> rows(tasks.size());

  int workers = cfg.resolved_workers();
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) \
    num_threads(workers > 0 ? workers : omp_get_max_threads())
  for (long t = 0; t < static_cast<long>(tasks.size()); ++t) {
    try {
      const Task& task = tasks[t];
      SessionContext ctx;
      ctx.harq.n_max = cfg.n_max;
      ctx.harq.channel = make_channel(cfg.fading(), cfg.snr_db[task.snr], cfg.seed);
      ctx.harq.budget = make_budget(corpus[0].image.height, corpus[0].image.width,
                                    rates[task.rate]);
      ctx.harq.chi = model.chi;
      ctx.detector = model;
      ctx.pipeline = pipeline;
      ctx.codec = &codec;
      uint64_t session_seed = Rng::derive(cfg.seed, static_cast<uint64_t>(t)).next_u64();
      rows[t].session = run_session(corpus[task.image].image, ctx, session_seed);
      rows[t].ms_ssim_final = ms_ssim(corpus[task.image].image, rows[t].session.reconstruction);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  std::ofstream out = open_output(out_dir, "results.jsonl");
  ordered_json header;
  header["config"] = config_record(cfg);
  out << header.dump() << "\n";
  for (size_t t = 0; t < tasks.size(); ++t) {
    const Task& task = tasks[t];
    const SessionResult& s = rows[t].session;
    ordered_json j;
    j["image"] = corpus[task.image].name;
    j["channel"] = cfg.channel;
    j["snr_db"] = cfg.snr_db[task.snr];
    j["rate"] = rates[task.rate];
    j["attempts"] = s.attempts;
    j["zeta"] = s.zeta;
    std::vector<double> psnr, dist;
    for (const AttemptRecord& a : s.trace) {
      psnr.push_back(a.psnr_db);
      dist.push_back(a.distance);
    }
    j["psnr_db"] = psnr;
    j["distance"] = dist;
    j["ms_ssim"] = rows[t].ms_ssim_final;
    out << j.dump() << "\n";
  }

  std::ofstream summary = open_output(out_dir, "summary.csv");
  write_config_header(summary, cfg);
  summary << "snr_db,rate,metric,value\n";
  for (size_t s = 0; s < cfg.snr_db.size(); ++s) {
    for (size_t r = 0; r < rates.size(); ++r) {
      double psnr_sum = 0, ssim_sum = 0, attempts_sum = 0, accepted = 0, count = 0;
      for (size_t t = 0; t < tasks.size(); ++t) {
        if (tasks[t].snr != s || tasks[t].rate != r) continue;
        psnr_sum += rows[t].session.trace.back().psnr_db;
        ssim_sum += rows[t].ms_ssim_final;
        attempts_sum += rows[t].session.attempts;
        accepted += rows[t].session.zeta;
        count += 1;
      }
      auto row = [&](const char* metric, double value) {
        summary << format_real(cfg.snr_db[s]) << "," << format_real(rates[r]) << "," << metric
                << "," << format_real(value) << "\n";
      };
      row("mean_psnr_db", psnr_sum / count);
      row("mean_ms_ssim", ssim_sum / count);
      row("mean_attempts", attempts_sum / count);
      row("accept_rate", accepted / count);
    }
  }
}

void run_dump_pd(const std::string& image_path, const std::string& filtration, double nu,
                 std::ostream& out) {
  RgbImage img = load_image(image_path);
  GrayImage gray = to_grayscale(img);

  FiltrationMap map;
  if (filtration == "grayscale") {
    map = grayscale_filtration(gray);
  } else {
    // height(du,dv) or radial(u,v); ':' works in place of parentheses.
    size_t open = filtration.find_first_of("(:");
    if (open == std::string::npos)
      throw config_error("filtration must be grayscale, height(du,dv) or radial(u,v)");
    std::string head = filtration.substr(0, open);
    std::string args = filtration.substr(open + 1);
    if (!args.empty() && args.back() == ')') args.pop_back();
    size_t comma = args.find(',');
    if (comma == std::string::npos)
      throw config_error("filtration needs two comma-separated parameters: " + filtration);
    double a = 0, b = 0;
    try {
      a = std::stod(args.substr(0, comma));
      b = std::stod(args.substr(comma + 1));
    } catch (const std::exception&) {
      throw config_error("filtration parameters are not numbers: " + filtration);
    }
    BinaryImage mask = binarize(gray, nu);
    if (head == "height") {
      map = height_filtration(mask, {a, b});
    } else if (head == "radial") {
      map = radial_filtration(mask, {static_cast<int>(std::lround(a)),
                                     static_cast<int>(std::lround(b))});
    } else {
      throw config_error("unknown filtration family '" + head + "'");
    }
  }

  PersistenceDiagram pd = compute_diagram(map);
  out << "{\"config\":{\"image\":\"" << image_path << "\",\"filtration\":\"" << filtration
      << "\",\"nu\":" << format_real(nu) << "}}\n";
  for (int q = 0; q <= 1; ++q) {
    for (const Interval& iv : pd.dim(q)) {
      out << "{\"q\":" << q << ",\"birth\":" << format_real(iv.birth)
          << ",\"death\":" << format_real(iv.death)
          << ",\"essential\":" << (iv.essential ? "true" : "false") << "}\n";
    }
  }
}

}  // namespace topoharq
