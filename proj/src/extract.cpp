#include "topoharq/extract.hpp"

#include <omp.h>

#include <stdexcept>

namespace topoharq {

std::vector<PersistenceDiagram> compute_diagrams(const RgbImage& img, const PipelineConfig& cfg) {
  BinaryImage mask = binarize(to_grayscale(img), cfg.nu);
  std::vector<FiltrationMap> maps = cfg.filtrations.build_maps(mask);
  std::vector<PersistenceDiagram> diagrams;
  diagrams.reserve(maps.size());
  for (const FiltrationMap& m : maps) diagrams.push_back(compute_diagram(m));
  return diagrams;
}

std::vector<double> extract_features(const RgbImage& img, const PipelineConfig& cfg) {
  return vectorize(compute_diagrams(img, cfg), cfg.filtrations.names(), cfg.signatures);
}

std::vector<std::vector<double>> extract_corpus_serial(const std::vector<RgbImage>& corpus,
                                                       const PipelineConfig& cfg) {
  std::vector<std::vector<double>> out(corpus.size());
  for (size_t i = 0; i < corpus.size(); ++i) out[i] = extract_features(corpus[i], cfg);
  return out;
}

std::vector<std::vector<double>> extract_corpus(const std::vector<RgbImage>& corpus,
                                                const PipelineConfig& cfg, int workers) {
  std::vector<std::vector<double>> out(corpus.size());
  const long n = static_cast<long>(corpus.size());
  // Exceptions cannot unwind out of the parallel region; carry one across.
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(workers > 0 ? workers : omp_get_max_threads())
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = extract_features(corpus[i], cfg);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace topoharq
