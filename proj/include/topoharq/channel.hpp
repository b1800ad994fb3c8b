#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "topoharq/rng.hpp"

namespace topoharq {

using SymbolBlock = std::vector<std::complex<double>>;

enum class FadingKind { awgn, rayleigh };

/// One operating point of the link. sigma2 is the complex noise variance
/// per symbol; transmit power is fixed at one per symbol by
/// power_normalize, so SNR is 1/sigma2.
struct ChannelSpec {
  FadingKind kind = FadingKind::awgn;
  double snr_db = 10.0;
  double sigma2 = 0.1;
  uint64_t seed = 0;
};

/// Noise variance for an SNR in dB under unit symbol power.
double noise_variance(double snr_db);

ChannelSpec make_channel(FadingKind kind, double snr_db, uint64_t seed);

/// Scale a block so its squared norm equals its length (average unit power
/// per symbol). Throws on the all-zero block.
SymbolBlock power_normalize(const SymbolBlock& x);

/// One pass through the channel.
struct Received {
  SymbolBlock symbols;
  std::complex<double> gain;  // block fading coefficient; exactly 1 for AWGN
};

/// y -> h*y + noise. Rayleigh draws h as a circular complex Gaussian with
/// unit mean square once per call (block fading, redrawn every slot);
/// the receiver is assumed to know h. Noise components are i.i.d. real
/// Gaussians of variance sigma2/2.
Received transmit(const SymbolBlock& y, const ChannelSpec& spec, Rng& rng);

}  // namespace topoharq
