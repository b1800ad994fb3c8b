#pragma once

#include <cstdint>
#include <vector>

#include "topoharq/image.hpp"

namespace topoharq {

/// Seeded synthetic rasters for benchmarks, calibration demos and the test
/// suite: gradients, discs, smooth waves and rectangles, cycled by index.
/// Values span the full 8-bit range so the default threshold produces
/// non-trivial masks.
RgbImage make_synthetic_image(int height, int width, uint64_t seed, int kind);

std::vector<RgbImage> make_synthetic_corpus(int count, int height, int width, uint64_t seed);

}  // namespace topoharq
