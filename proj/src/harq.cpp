#include "topoharq/harq.hpp"

#include <cmath>
#include <stdexcept>

#include "topoharq/metrics.hpp"

namespace topoharq {

SymbolBlock combine(const std::vector<Received>& buffer) {
  if (buffer.empty()) throw std::invalid_argument("combine: empty reception buffer");
  size_t k = buffer.front().symbols.size();
  double total_gain = 0;
  SymbolBlock out(k, 0.0);
  for (const Received& rx : buffer) {
    if (rx.symbols.size() != k) throw std::invalid_argument("combine: ragged reception buffer");
    std::complex<double> w = std::conj(rx.gain);
    for (size_t i = 0; i < k; ++i) out[i] += w * rx.symbols[i];
    total_gain += std::norm(rx.gain);
  }
  if (total_gain <= 0) throw std::invalid_argument("combine: zero total gain");
  for (auto& s : out) s /= total_gain;
  return out;
}

SymbolBlock pad_view(const std::vector<Received>& buffer, int n_max, long k) {
  if (n_max < 1 || k < 1) throw std::invalid_argument("pad_view: bad dimensions");
  if (buffer.size() > static_cast<size_t>(n_max))
    throw std::invalid_argument("pad_view: buffer exceeds the attempt budget");
  SymbolBlock view(static_cast<size_t>(n_max) * k, 0.0);
  for (size_t j = 0; j < buffer.size(); ++j) {
    if (buffer[j].symbols.size() != static_cast<size_t>(k))
      throw std::invalid_argument("pad_view: slot length mismatch");
    for (long i = 0; i < k; ++i) view[j * k + i] = buffer[j].symbols[i];
  }
  return view;
}

SessionResult run_session(const RgbImage& img, const SessionContext& ctx, uint64_t session_seed) {
  if (!ctx.codec) throw std::invalid_argument("run_session: no codec");
  if (ctx.harq.n_max < 1) throw std::invalid_argument("run_session: attempt budget must be >= 1");

  auto gather = [&](const std::vector<double>& full) {
    std::vector<double> out;
    out.reserve(ctx.detector.mask.size());
    for (int idx : ctx.detector.mask) out.push_back(full[idx]);
    return out;
  };

  // Encode once; retries reuse the same frame.
  std::vector<double> sent = gather(extract_features(img, ctx.pipeline));
  std::vector<double> payload = ctx.codec->encode(img, ctx.harq.budget);
  FeatureStats stats = ctx.detector.stats();
  SymbolBlock frame = assemble_frame(payload, sent, stats, ctx.harq.budget);
  double energy = 0;
  for (const auto& s : frame) energy += std::norm(s);
  SymbolBlock y = power_normalize(frame);
  double scale = std::sqrt(static_cast<double>(frame.size()) / energy);

  SessionResult result;
  std::vector<Received> buffer;
  int zeta = 0;
  while (static_cast<int>(buffer.size()) < ctx.harq.n_max && zeta == 0) {
    Rng rng = Rng::derive(session_seed, buffer.size() + 1);
    buffer.push_back(transmit(y, ctx.harq.channel, rng));

    SymbolBlock combined = combine(buffer);
    for (auto& s : combined) s /= scale;
    FrameParts parts = disassemble_frame(combined, 1.0, stats, ctx.harq.budget);
    RgbImage rebuilt = ctx.codec->decode(parts.payload, ctx.harq.budget);
    std::vector<double> rx_features = gather(extract_features(rebuilt, ctx.pipeline));

    double dist = tda_distance(parts.features, rx_features, ctx.detector);
    zeta = decide(dist, ctx.harq.chi);
    result.trace.push_back({psnr_db(img, rebuilt), dist, zeta});
    result.reconstruction = std::move(rebuilt);
  }
  result.attempts = static_cast<int>(buffer.size());
  result.zeta = zeta;
  return result;
}

}  // namespace topoharq
