#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "topoharq/config.hpp"
#include "topoharq/detector.hpp"
#include "topoharq/image.hpp"

namespace topoharq {

/// One corpus item: the file stem used in output rows plus its pixels.
struct CorpusEntry {
  std::string name;
  RgbImage image;
};

/// Every *.png / *.pgm / *.ppm directly under dir, sorted by filename so
/// output rows are stable. Throws config_error when the directory is
/// missing or holds no images.
std::vector<CorpusEntry> load_corpus(const std::string& dir);

/// Feature extraction over the corpus; writes <out_dir>/features.csv with
/// one row per image and the layout tokens as the header.
void run_extract(const ExperimentConfig& cfg, const std::string& out_dir);

/// Detector calibration; writes <out_dir>/detector.json and
/// <out_dir>/selection_mask.json.
void run_calibrate(const ExperimentConfig& cfg, const std::string& out_dir);

/// Transmission grid (images x SNRs x rates) through the retry protocol;
/// writes <out_dir>/results.jsonl (one record per session, task order) and
/// <out_dir>/summary.csv (long format: snr_db, rate, metric, value).
/// Needs the detector file named by cfg.model.
void run_sweep(const ExperimentConfig& cfg, const std::string& out_dir);

/// Persistence diagram of one image under one named sweep ("grayscale",
/// "height(du,dv)" or "radial(u,v)"), as JSON lines on out.
void run_dump_pd(const std::string& image_path, const std::string& filtration, double nu,
                 std::ostream& out);

void save_detector(const DetectorModel& model, const ExperimentConfig& cfg,
                   const std::string& path);
DetectorModel load_detector(const std::string& path);

}  // namespace topoharq
