#include "topoharq/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace topoharq {

double psnr_db(const RgbImage& a, const RgbImage& b) {
  if (a.height != b.height || a.width != b.width)
    throw std::invalid_argument("psnr_db: image shapes differ");
  double sse = 0;
  for (size_t i = 0; i < a.data.size(); ++i) {
    double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
    sse += d * d;
  }
  if (sse == 0) return 100.0;
  double mse = sse / static_cast<double>(a.data.size());
  return std::min(100.0, 10.0 * std::log10(255.0 * 255.0 / mse));
}

namespace {

struct Plane {
  int h = 0, w = 0;
  std::vector<double> v;

  double at(int i, int j) const { return v[static_cast<size_t>(i) * w + j]; }
};

Plane luma_plane(const RgbImage& img) {
  GrayImage g = to_grayscale(img);
  return {g.height, g.width, std::move(g.data)};
}

constexpr int win = 11;

std::array<double, win> gaussian_taps() {
  std::array<double, win> taps{};
  double sigma = 1.5, sum = 0;
  for (int i = 0; i < win; ++i) {
    double x = i - (win - 1) / 2.0;
    taps[i] = std::exp(-x * x / (2 * sigma * sigma));
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// Separable valid-mode filtering; output shrinks by win-1 per axis.
Plane filter(const Plane& p) {
  static const std::array<double, win> taps = gaussian_taps();
  Plane rows{p.h, p.w - win + 1, {}};
  rows.v.resize(static_cast<size_t>(rows.h) * rows.w);
  for (int i = 0; i < p.h; ++i)
    for (int j = 0; j < rows.w; ++j) {
      double acc = 0;
      for (int t = 0; t < win; ++t) acc += taps[t] * p.at(i, j + t);
      rows.v[static_cast<size_t>(i) * rows.w + j] = acc;
    }
  Plane out{p.h - win + 1, rows.w, {}};
  out.v.resize(static_cast<size_t>(out.h) * out.w);
  for (int i = 0; i < out.h; ++i)
    for (int j = 0; j < out.w; ++j) {
      double acc = 0;
      for (int t = 0; t < win; ++t) acc += taps[t] * rows.at(i + t, j);
      out.v[static_cast<size_t>(i) * out.w + j] = acc;
    }
  return out;
}

Plane product(const Plane& a, const Plane& b) {
  Plane out{a.h, a.w, {}};
  out.v.resize(a.v.size());
  for (size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] * b.v[i];
  return out;
}

Plane halve(const Plane& p) {
  Plane out{p.h / 2, p.w / 2, {}};
  out.v.resize(static_cast<size_t>(out.h) * out.w);
  for (int i = 0; i < out.h; ++i)
    for (int j = 0; j < out.w; ++j)
      out.v[static_cast<size_t>(i) * out.w + j] =
          0.25 * (p.at(2 * i, 2 * j) + p.at(2 * i, 2 * j + 1) + p.at(2 * i + 1, 2 * j) +
                  p.at(2 * i + 1, 2 * j + 1));
  return out;
}

}  // namespace

double ms_ssim(const RgbImage& img_a, const RgbImage& img_b) {
  if (img_a.height != img_b.height || img_a.width != img_b.width)
    throw std::invalid_argument("ms_ssim: image shapes differ");

  static const std::array<double, 5> base_weights = {0.0448, 0.2856, 0.3001, 0.2363, 0.1333};
  int min_dim = std::min(img_a.height, img_a.width);
  int scales = 0;
  while (scales < 5 && (min_dim >> scales) >= win) ++scales;
  if (scales == 0) throw std::invalid_argument("ms_ssim: image smaller than the filter window");

  double weight_sum = 0;
  for (int i = 0; i < scales; ++i) weight_sum += base_weights[i];

  constexpr double c1 = (0.01 * 255) * (0.01 * 255);
  constexpr double c2 = (0.03 * 255) * (0.03 * 255);

  Plane a = luma_plane(img_a);
  Plane b = luma_plane(img_b);
  double result = 1.0;
  for (int s = 0; s < scales; ++s) {
    Plane mu_a = filter(a);
    Plane mu_b = filter(b);
    Plane saa = filter(product(a, a));
    Plane sbb = filter(product(b, b));
    Plane sab = filter(product(a, b));

    bool last = s == scales - 1;
    double acc = 0;
    for (size_t i = 0; i < mu_a.v.size(); ++i) {
      double ma = mu_a.v[i], mb = mu_b.v[i];
      double va = saa.v[i] - ma * ma;
      double vb = sbb.v[i] - mb * mb;
      double vab = sab.v[i] - ma * mb;
      double cs = (2 * vab + c2) / (va + vb + c2);
      if (last) {
        double lum = (2 * ma * mb + c1) / (ma * ma + mb * mb + c1);
        acc += lum * cs;
      } else {
        acc += std::max(cs, 0.0);
      }
    }
    double mean = std::max(acc / static_cast<double>(mu_a.v.size()), 0.0);
    result *= std::pow(mean, base_weights[s] / weight_sum);
    if (!last) {
      a = halve(a);
      b = halve(b);
    }
  }
  return result;
}

}  // namespace topoharq
