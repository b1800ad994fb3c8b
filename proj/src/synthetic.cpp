#include "topoharq/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "topoharq/rng.hpp"

namespace topoharq {

namespace {

uint8_t clamp8(double v) {
  return static_cast<uint8_t>(std::clamp(v, 0.0, 255.0));
}

}  // namespace

RgbImage make_synthetic_image(int height, int width, uint64_t seed, int kind) {
  Rng rng = Rng::derive(seed, static_cast<uint64_t>(kind) + 1);
  RgbImage img = make_rgb(height, width);

  double base[3] = {rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(-20, 20)};
  auto set = [&](int u, int v, double g) {
    for (int c = 0; c < 3; ++c) img.at(u, v, c) = clamp8(g + base[c]);
  };

  switch (kind % 4) {
    case 0: {  // tilted gradient with one bright disc
      double gu = rng.uniform(-1, 1), gv = rng.uniform(-1, 1);
      double cu = rng.uniform(0, height), cv = rng.uniform(0, width);
      double rad = rng.uniform(0.15, 0.4) * std::min(height, width);
      for (int u = 0; u < height; ++u)
        for (int v = 0; v < width; ++v) {
          double g = 128 + 90 * (gu * (u - height / 2.0) / height + gv * (v - width / 2.0) / width) * 2;
          if (std::hypot(u - cu, v - cv) < rad) g = 230;
          set(u, v, g);
        }
      break;
    }
    case 1: {  // dark discs on a bright field
      int discs = 1 + static_cast<int>(rng.below(3));
      std::vector<double> cu(discs), cv(discs), rad(discs);
      for (int d = 0; d < discs; ++d) {
        cu[d] = rng.uniform(0, height);
        cv[d] = rng.uniform(0, width);
        rad[d] = rng.uniform(0.1, 0.3) * std::min(height, width);
      }
      for (int u = 0; u < height; ++u)
        for (int v = 0; v < width; ++v) {
          double g = 200;
          for (int d = 0; d < discs; ++d)
            if (std::hypot(u - cu[d], v - cv[d]) < rad[d]) g = 40;
          set(u, v, g);
        }
      break;
    }
    case 2: {  // crossed smooth waves
      double fu = 1 + rng.below(3), fv = 1 + rng.below(3);
      double pu = rng.uniform(0, 6.28), pv = rng.uniform(0, 6.28);
      for (int u = 0; u < height; ++u)
        for (int v = 0; v < width; ++v) {
          double g = 128 + 100 * std::cos(6.283185307179586 * fu * u / height + pu) *
                               std::cos(6.283185307179586 * fv * v / width + pv);
          set(u, v, g);
        }
      break;
    }
    default: {  // bright rectangle on a gradient, light speckle
      int u0 = static_cast<int>(rng.below(std::max(1, height / 2)));
      int v0 = static_cast<int>(rng.below(std::max(1, width / 2)));
      int u1 = u0 + 2 + static_cast<int>(rng.below(std::max(1, height / 2)));
      int v1 = v0 + 2 + static_cast<int>(rng.below(std::max(1, width / 2)));
      for (int u = 0; u < height; ++u)
        for (int v = 0; v < width; ++v) {
          double g = 60 + 120.0 * v / std::max(1, width - 1);
          if (u >= u0 && u <= u1 && v >= v0 && v <= v1) g = 220;
          g += rng.uniform(-10, 10);
          set(u, v, g);
        }
      break;
    }
  }
  return img;
}

std::vector<RgbImage> make_synthetic_corpus(int count, int height, int width, uint64_t seed) {
  std::vector<RgbImage> corpus;
  corpus.reserve(count);
  for (int i = 0; i < count; ++i)
    corpus.push_back(make_synthetic_image(height, width, seed + i, i));
  return corpus;
}

}  // namespace topoharq
