#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topoharq/channel.hpp"
#include "topoharq/codec.hpp"
#include "topoharq/extract.hpp"

namespace topoharq {

/// Calibrated acceptance model: which features to compare, how to scale
/// them, and the decision threshold.
struct DetectorModel {
  std::vector<int> mask;         // feature indices, in selection order
  std::vector<double> mean;      // per selected feature, over the corpus
  std::vector<double> stdev;
  double chi = 0;
  std::string distance = "rms";
  double greedy_bound = 0;

  FeatureStats stats() const { return {mean, stdev}; }
};

/// Root-mean-square of the per-feature differences after scaling each by
/// its corpus deviation. Zero iff the vectors agree on every feature.
double tda_distance(const std::vector<double>& sent, const std::vector<double>& rebuilt,
                    const DetectorModel& m);

/// 1 = accept (distance within chi, boundary included), 0 = request retry.
int decide(double distance, double chi);

struct CalibrationSettings {
  PipelineConfig pipeline;
  CodecBudget budget;
  ChannelSpec channel;  // operating point for the noisy pass
  int select_count = 28;
  double quality_target_db = 20.0;  // reconstructions at or above count as good
  double accept_fraction = 0.95;
  uint64_t seed = 1;
  int min_corpus = 50;
  int workers = 0;
};

struct CalibrationReport {
  DetectorModel model;
  std::vector<double> distances;  // pooled: noiseless pass then noisy pass
  std::vector<double> psnrs;      // aligned with distances
};

/// End-to-end threshold fit: extract corpus features, pick the mask and
/// stats, replay every image through a noiseless and a noisy single
/// transmission, then set chi to the smallest value accepting at least
/// accept_fraction of the reconstructions that met the quality target.
/// Throws when the corpus is too small, no reconstruction reaches the
/// target, or every pooled distance equals the same nonzero value (a
/// mis-wired pipeline; an all-zero pool is legitimate and yields chi = 0).
CalibrationReport calibrate(const std::vector<RgbImage>& corpus, const Codec& codec,
                            const CalibrationSettings& cfg);

}  // namespace topoharq
