#pragma once

#include <vector>

#include "topoharq/cubical.hpp"
#include "topoharq/filtration.hpp"
#include "topoharq/image.hpp"
#include "topoharq/signatures.hpp"

namespace topoharq {

/// Everything needed to turn an image into its topology feature vector:
/// the binarization threshold, the sweep family and the sampling plan.
struct PipelineConfig {
  double nu = 128.0;
  FiltrationSet filtrations = FiltrationSet::standard();
  SignatureConfig signatures;

  size_t feature_count() const { return filtrations.count() * 2 * signatures.block_size(); }
};

/// Persistence diagrams of all configured sweeps of one image, in
/// FiltrationSet::names() order.
std::vector<PersistenceDiagram> compute_diagrams(const RgbImage& img, const PipelineConfig& cfg);

/// Full per-image pipeline: luma, mask, sweeps, diagrams, signatures.
std::vector<double> extract_features(const RgbImage& img, const PipelineConfig& cfg);

/// Reference corpus loop: one image after another on the calling thread.
std::vector<std::vector<double>> extract_corpus_serial(const std::vector<RgbImage>& corpus,
                                                       const PipelineConfig& cfg);

/// OpenMP corpus loop over independent image tasks. workers = 0 keeps the
/// runtime default; results are positionally identical to the serial
/// reference, which the test suite asserts.
std::vector<std::vector<double>> extract_corpus(const std::vector<RgbImage>& corpus,
                                                const PipelineConfig& cfg, int workers = 0);

}  // namespace topoharq
