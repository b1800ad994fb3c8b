#pragma once

#include "topoharq/image.hpp"

namespace topoharq {

/// Peak signal-to-noise ratio over all three 8-bit channels, in dB.
/// Identical images return the 100 dB cap instead of infinity; shapes must
/// match.
double psnr_db(const RgbImage& a, const RgbImage& b);

/// Multi-scale structural similarity on BT.601 luma: 11x11 Gaussian window
/// (sigma 1.5), K1 = 0.01, K2 = 0.03, dyadic weights 0.0448 / 0.2856 /
/// 0.3001 / 0.2363 / 0.1333. Uses five scales when min(height, width) is at
/// least 176 and drops scales (renormalizing the weights) for smaller
/// inputs; below 11 pixels no scale fits and the call throws. Identical
/// images return exactly 1.
double ms_ssim(const RgbImage& a, const RgbImage& b);

}  // namespace topoharq
