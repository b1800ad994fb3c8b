#include "topoharq/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "topoharq/metrics.hpp"

namespace topoharq {

double tda_distance(const std::vector<double>& sent, const std::vector<double>& rebuilt,
                    const DetectorModel& m) {
  size_t n = m.mask.size();
  if (sent.size() != n || rebuilt.size() != n || m.stdev.size() != n)
    throw std::invalid_argument("tda_distance: vector sizes disagree with the model");
  double acc = 0;
  for (size_t i = 0; i < n; ++i) {
    if (m.stdev[i] <= 0) throw std::invalid_argument("tda_distance: degenerate model deviation");
    double d = (sent[i] - rebuilt[i]) / m.stdev[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

int decide(double distance, double chi) { return distance <= chi ? 1 : 0; }

namespace {

std::vector<double> gather(const std::vector<double>& full, const std::vector<int>& mask) {
  std::vector<double> out;
  out.reserve(mask.size());
  for (int idx : mask) out.push_back(full[idx]);
  return out;
}

}  // namespace

CalibrationReport calibrate(const std::vector<RgbImage>& corpus, const Codec& codec,
                            const CalibrationSettings& cfg) {
  if (static_cast<int>(corpus.size()) < cfg.min_corpus)
    throw std::invalid_argument("calibrate: corpus smaller than the required minimum");
  // The frame tail is a protocol constant, so the selection must fill it.
  if (cfg.select_count != 2 * CodecBudget::feature_symbols)
    throw std::invalid_argument("calibrate: select count must match the transmitted tail");

  std::vector<std::vector<double>> features = extract_corpus(corpus, cfg.pipeline, cfg.workers);

  CalibrationReport report;
  DetectorModel& model = report.model;
  SelectionMask mask = pearson_select(features, cfg.select_count);
  model.mask = mask.indices;
  model.greedy_bound = mask.greedy_bound;

  size_t n = corpus.size();
  model.mean.assign(model.mask.size(), 0.0);
  model.stdev.assign(model.mask.size(), 0.0);
  for (size_t f = 0; f < model.mask.size(); ++f) {
    double mean = 0;
    for (size_t i = 0; i < n; ++i) mean += features[i][model.mask[f]];
    mean /= static_cast<double>(n);
    double ss = 0;
    for (size_t i = 0; i < n; ++i) {
      double c = features[i][model.mask[f]] - mean;
      ss += c * c;
    }
    model.mean[f] = mean;
    model.stdev[f] = std::sqrt(ss / static_cast<double>(n - 1));
  }
  FeatureStats stats = model.stats();

  // Replay each image once without noise and once at the operating SNR.
  for (int pass = 0; pass < 2; ++pass) {
    for (size_t i = 0; i < n; ++i) {
      std::vector<double> sent = gather(features[i], model.mask);
      std::vector<double> payload = codec.encode(corpus[i], cfg.budget);
      SymbolBlock frame = assemble_frame(payload, sent, stats, cfg.budget);
      double energy = 0;
      for (const auto& s : frame) energy += std::norm(s);
      SymbolBlock y = power_normalize(frame);
      // The power scale is transmitter side information, like the fading
      // gain under perfect CSI; the receiver divides it back out.
      double scale = std::sqrt(static_cast<double>(frame.size()) / energy);

      SymbolBlock observed;
      std::complex<double> gain = 1.0;
      if (pass == 0) {
        observed = y;
      } else {
        Rng rng = Rng::derive(cfg.seed, i + 1);
        Received rx = transmit(y, cfg.channel, rng);
        observed = std::move(rx.symbols);
        gain = rx.gain;
      }
      for (auto& s : observed) s /= scale;

      FrameParts parts = disassemble_frame(observed, gain, stats, cfg.budget);
      RgbImage rebuilt = codec.decode(parts.payload, cfg.budget);
      std::vector<double> rx_features =
          gather(extract_features(rebuilt, cfg.pipeline), model.mask);

      report.distances.push_back(tda_distance(parts.features, rx_features, model));
      report.psnrs.push_back(psnr_db(corpus[i], rebuilt));
    }
  }

  std::vector<double> good;
  for (size_t i = 0; i < report.distances.size(); ++i)
    if (report.psnrs[i] >= cfg.quality_target_db) good.push_back(report.distances[i]);
  if (good.empty())
    throw std::runtime_error("calibrate: no reconstruction reached the quality target");

  double lo = *std::min_element(report.distances.begin(), report.distances.end());
  double hi = *std::max_element(report.distances.begin(), report.distances.end());
  if (lo == hi && hi > 0)
    throw std::runtime_error("calibrate: every distance is the same nonzero value");

  std::sort(good.begin(), good.end());
  size_t keep = static_cast<size_t>(
      std::ceil(cfg.accept_fraction * static_cast<double>(good.size())));
  keep = std::clamp<size_t>(keep, 1, good.size());
  model.chi = good[keep - 1];
  return report;
}

}  // namespace topoharq
