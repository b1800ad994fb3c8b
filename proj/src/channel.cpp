#include "topoharq/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace topoharq {

double noise_variance(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

ChannelSpec make_channel(FadingKind kind, double snr_db, uint64_t seed) {
  return {kind, snr_db, noise_variance(snr_db), seed};
}

SymbolBlock power_normalize(const SymbolBlock& x) {
  double energy = 0;
  for (const auto& s : x) energy += std::norm(s);
  if (energy <= 0) throw std::invalid_argument("power_normalize: zero-energy block");
  double scale = std::sqrt(static_cast<double>(x.size()) / energy);
  SymbolBlock y(x.size());
  for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] * scale;
  return y;
}

Received transmit(const SymbolBlock& y, const ChannelSpec& spec, Rng& rng) {
  Received rx;
  rx.gain = 1.0;
  if (spec.kind == FadingKind::rayleigh) {
    // E[|h|^2] = 1: each component has variance 1/2.
    rx.gain = std::complex<double>(rng.gaussian(), rng.gaussian()) * std::sqrt(0.5);
  }
  double comp_sigma = std::sqrt(spec.sigma2 / 2.0);
  rx.symbols.resize(y.size());
  for (size_t i = 0; i < y.size(); ++i) {
    std::complex<double> noise(comp_sigma * rng.gaussian(), comp_sigma * rng.gaussian());
    rx.symbols[i] = rx.gain * y[i] + noise;
  }
  return rx;
}

}  // namespace topoharq
