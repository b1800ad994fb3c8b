#include "topoharq/signatures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace topoharq {

namespace {

constexpr double half_sqrt2 = 0.70710678118654752440084436210485;
constexpr double pi = 3.141592653589793238462643383279502884;

}  // namespace

double wasserstein_amplitude(const PersistenceDiagram& pd, int q, int p) {
  if (p < 1) throw std::invalid_argument("wasserstein_amplitude: order must be >= 1");
  double longest = 0;
  for (const Interval& iv : pd.dim(q)) longest = std::max(longest, iv.persistence());
  if (longest == 0) return 0;
  // Normalized by the longest bar so large orders cannot overflow.
  double sum = 0;
  for (const Interval& iv : pd.dim(q)) sum += std::pow(iv.persistence() / longest, p);
  return half_sqrt2 * longest * std::pow(sum, 1.0 / p);
}

double bottleneck_amplitude(const PersistenceDiagram& pd, int q) {
  double longest = 0;
  for (const Interval& iv : pd.dim(q)) longest = std::max(longest, iv.persistence());
  return half_sqrt2 * longest;
}

double betti_curve(const PersistenceDiagram& pd, int q, double t) {
  int count = 0;
  for (const Interval& iv : pd.dim(q))
    if (iv.birth <= t && t <= iv.death) ++count;
  return count;
}

double landscape_value(const PersistenceDiagram& pd, int q, int layer, double t) {
  if (layer < 1) throw std::invalid_argument("landscape_value: layers count from 1");
  std::vector<double> tents;
  for (const Interval& iv : pd.dim(q)) {
    if (t > iv.birth && t < iv.death) tents.push_back(std::min(t - iv.birth, iv.death - t));
  }
  if (static_cast<size_t>(layer) > tents.size()) return 0;
  std::nth_element(tents.begin(), tents.begin() + (layer - 1), tents.end(),
                   std::greater<double>());
  return tents[layer - 1];
}

double heat_kernel_value(const PersistenceDiagram& pd, int q, double kappa, double r, double s) {
  if (kappa <= 0) throw std::invalid_argument("heat_kernel_value: bandwidth must be positive");
  double sum = 0;
  for (const Interval& iv : pd.dim(q)) {
    double db = r - iv.birth, dd = s - iv.death;
    double mb = r - iv.death, md = s - iv.birth;
    sum += std::exp(-(db * db + dd * dd) / (8.0 * kappa)) -
           std::exp(-(mb * mb + md * md) / (8.0 * kappa));
  }
  return sum / (8.0 * pi * kappa);
}

double persistent_entropy(const PersistenceDiagram& pd, int q) {
  double total = 0;
  for (const Interval& iv : pd.dim(q)) total += iv.persistence();
  if (total <= 0) return 0;
  double h = 0;
  for (const Interval& iv : pd.dim(q)) {
    double l = iv.persistence();
    if (l > 0) {
      double frac = l / total;
      h -= frac * std::log(frac);
    }
  }
  return h;
}

std::string FeatureDescriptor::token() const {
  char buf[96];
  if (signature == "betti")
    std::snprintf(buf, sizeof buf, "%s|q%d|betti|s%d", filtration.c_str(), q, ip);
  else if (signature == "landscape")
    std::snprintf(buf, sizeof buf, "%s|q%d|landscape|l%d", filtration.c_str(), q, ip);
  else if (signature == "heat")
    std::snprintf(buf, sizeof buf, "%s|q%d|heat|k%g", filtration.c_str(), q, dp);
  else if (signature == "wasserstein")
    std::snprintf(buf, sizeof buf, "%s|q%d|wasserstein|p%d", filtration.c_str(), q, ip);
  else
    std::snprintf(buf, sizeof buf, "%s|q%d|%s", filtration.c_str(), q, signature.c_str());
  return buf;
}

std::vector<FeatureDescriptor> feature_layout(const std::vector<std::string>& filtration_names,
                                              const SignatureConfig& cfg) {
  std::vector<FeatureDescriptor> layout;
  layout.reserve(filtration_names.size() * 2 * cfg.block_size());
  for (const std::string& name : filtration_names) {
    for (int q = 0; q <= 1; ++q) {
      for (int i = 0; i < cfg.betti_samples; ++i) layout.push_back({name, q, "betti", i, 0});
      for (int layer : cfg.landscape_layers) layout.push_back({name, q, "landscape", layer, 0});
      for (double kappa : cfg.heat_bandwidths) layout.push_back({name, q, "heat", 0, kappa});
      for (int p : cfg.wasserstein_orders) layout.push_back({name, q, "wasserstein", p, 0});
      layout.push_back({name, q, "bottleneck", 0, 0});
      layout.push_back({name, q, "entropy", 0, 0});
    }
  }
  return layout;
}

namespace {

// L2 amplitude of one landscape layer over a midpoint grid on [0, ceiling].
double landscape_amplitude(const PersistenceDiagram& pd, int q, int layer,
                           const SignatureConfig& cfg) {
  double c = pd.ceiling;
  if (c <= 0 || cfg.landscape_samples <= 0) return 0;
  double step = c / cfg.landscape_samples;
  double acc = 0;
  for (int i = 0; i < cfg.landscape_samples; ++i) {
    double v = landscape_value(pd, q, layer, (i + 0.5) * step);
    acc += v * v;
  }
  return std::sqrt(acc * step);
}

// L2 amplitude of the heat embedding over a midpoint grid on [0, ceiling]^2.
// The kernel is separable per interval, so the grid accumulates rank-one
// updates instead of evaluating every (interval, cell) pair.
double heat_amplitude(const PersistenceDiagram& pd, int q, double kappa,
                      const SignatureConfig& cfg) {
  double c = pd.ceiling;
  int g = cfg.heat_grid;
  if (c <= 0 || g <= 0) return 0;
  double step = c / g;

  std::vector<double> acc(static_cast<size_t>(g) * g, 0.0);
  std::vector<double> eb(g), ed(g);
  for (const Interval& iv : pd.dim(q)) {
    for (int i = 0; i < g; ++i) {
      double x = (i + 0.5) * step;
      double db = x - iv.birth, dd = x - iv.death;
      eb[i] = std::exp(-db * db / (8.0 * kappa));
      ed[i] = std::exp(-dd * dd / (8.0 * kappa));
    }
    for (int i = 0; i < g; ++i) {
      double* row = acc.data() + static_cast<size_t>(i) * g;
      double bi = eb[i], di = ed[i];
      for (int j = 0; j < g; ++j) row[j] += bi * ed[j] - di * eb[j];
    }
  }
  double norm = 1.0 / (8.0 * pi * kappa);
  double sumsq = 0;
  for (double v : acc) sumsq += (v * norm) * (v * norm);
  return std::sqrt(sumsq * step * step);
}

}  // namespace

double evaluate_descriptor(const PersistenceDiagram& pd, const FeatureDescriptor& d,
                           const SignatureConfig& cfg) {
  if (d.signature == "betti") {
    double t = cfg.betti_samples > 1 ? pd.ceiling * d.ip / (cfg.betti_samples - 1) : 0.0;
    return betti_curve(pd, d.q, t);
  }
  if (d.signature == "landscape") return landscape_amplitude(pd, d.q, d.ip, cfg);
  if (d.signature == "heat") return heat_amplitude(pd, d.q, d.dp, cfg);
  if (d.signature == "wasserstein") return wasserstein_amplitude(pd, d.q, d.ip);
  if (d.signature == "bottleneck") return bottleneck_amplitude(pd, d.q);
  if (d.signature == "entropy") return persistent_entropy(pd, d.q);
  throw std::invalid_argument("evaluate_descriptor: unknown signature " + d.signature);
}

std::vector<double> vectorize(const std::vector<PersistenceDiagram>& diagrams,
                              const std::vector<std::string>& filtration_names,
                              const SignatureConfig& cfg) {
  if (diagrams.size() != filtration_names.size())
    throw std::invalid_argument("vectorize: one diagram per filtration required");
  std::vector<double> out;
  out.reserve(diagrams.size() * 2 * cfg.block_size());
  std::vector<FeatureDescriptor> layout = feature_layout(filtration_names, cfg);
  size_t per_filtration = static_cast<size_t>(2) * cfg.block_size();
  for (size_t i = 0; i < layout.size(); ++i)
    out.push_back(evaluate_descriptor(diagrams[i / per_filtration], layout[i], cfg));
  return out;
}

SelectionMask pearson_select(const std::vector<std::vector<double>>& samples, int k) {
  size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("pearson_select: need at least two sample rows");
  size_t nf = samples[0].size();
  for (const auto& row : samples)
    if (row.size() != nf) throw std::invalid_argument("pearson_select: ragged sample matrix");

  // Column-major centered copy; constant columns are flagged, not selected.
  std::vector<double> centered(nf * n);
  std::vector<double> sumsq(nf, 0.0);
  std::vector<char> constant(nf, 0);
  size_t varying = 0;
  for (size_t f = 0; f < nf; ++f) {
    double mean = 0;
    for (size_t i = 0; i < n; ++i) mean += samples[i][f];
    mean /= static_cast<double>(n);
    double ss = 0;
    for (size_t i = 0; i < n; ++i) {
      double c = samples[i][f] - mean;
      centered[f * n + i] = c;
      ss += c * c;
    }
    sumsq[f] = ss;
    constant[f] = ss <= 1e-24 * static_cast<double>(n) * (1.0 + mean * mean) ? 1 : 0;
    if (!constant[f]) ++varying;
  }
  if (k < 1 || static_cast<size_t>(k) > varying)
    throw std::invalid_argument("pearson_select: k exceeds the number of varying features");

  auto corr = [&](size_t a, size_t b) {
    double dot = 0;
    const double* ca = centered.data() + a * n;
    const double* cb = centered.data() + b * n;
    for (size_t i = 0; i < n; ++i) dot += ca[i] * cb[i];
    return dot / std::sqrt(sumsq[a] * sumsq[b]);
  };

  SelectionMask mask;
  std::vector<char> taken(nf, 0);
  std::vector<double> worst(nf, 0.0);  // max |corr| against the selected set

  size_t seed = nf;
  for (size_t f = 0; f < nf; ++f)
    if (!constant[f] && (seed == nf || sumsq[f] > sumsq[seed])) seed = f;
  taken[seed] = 1;
  mask.indices.push_back(static_cast<int>(seed));
  for (size_t f = 0; f < nf; ++f)
    if (!constant[f] && !taken[f]) worst[f] = std::abs(corr(f, seed));

  while (mask.indices.size() < static_cast<size_t>(k)) {
    size_t best = nf;
    for (size_t f = 0; f < nf; ++f) {
      if (constant[f] || taken[f]) continue;
      if (best == nf || worst[f] < worst[best]) best = f;
    }
    taken[best] = 1;
    mask.greedy_bound = std::max(mask.greedy_bound, worst[best]);
    mask.indices.push_back(static_cast<int>(best));
    for (size_t f = 0; f < nf; ++f)
      if (!constant[f] && !taken[f]) worst[f] = std::max(worst[f], std::abs(corr(f, best)));
  }
  return mask;
}

}  // namespace topoharq
