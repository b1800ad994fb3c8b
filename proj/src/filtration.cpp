#include "topoharq/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace topoharq {

FiltrationMap height_filtration(const BinaryImage& img, Direction psi) {
  double norm = std::hypot(psi.du, psi.dv);
  if (norm == 0.0) throw std::invalid_argument("height_filtration: zero direction");
  double du = psi.du / norm;
  double dv = psi.dv / norm;

  FiltrationMap m;
  m.height = img.height;
  m.width = img.width;
  m.values.resize(static_cast<size_t>(img.height) * img.width);

  // The shift and the ceiling depend only on the grid, not on the mask, so
  // the background level is stable across images of the same size.
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int u = 0; u < img.height; ++u) {
    for (int v = 0; v < img.width; ++v) {
      double ip = du * u + dv * v;
      if (first || ip < lo) lo = ip;
      if (first || ip > hi) hi = ip;
      first = false;
    }
  }
  m.ceiling = hi - lo;
  for (int u = 0; u < img.height; ++u)
    for (int v = 0; v < img.width; ++v)
      m.values[static_cast<size_t>(u) * img.width + v] =
          img.active(u, v) ? du * u + dv * v - lo : m.ceiling;
  return m;
}

FiltrationMap radial_filtration(const BinaryImage& img, Center c) {
  if (c.u < 0 || c.u >= img.height || c.v < 0 || c.v >= img.width)
    throw std::invalid_argument("radial_filtration: center off the grid");

  FiltrationMap m;
  m.height = img.height;
  m.width = img.width;
  m.values.resize(static_cast<size_t>(img.height) * img.width);

  // Farthest grid point from c is a corner; that distance saturates the sweep.
  double far = 0.0;
  for (int u : {0, img.height - 1})
    for (int v : {0, img.width - 1}) far = std::max(far, std::hypot(u - c.u, v - c.v));
  m.ceiling = far;
  for (int u = 0; u < img.height; ++u)
    for (int v = 0; v < img.width; ++v)
      m.values[static_cast<size_t>(u) * img.width + v] =
          img.active(u, v) ? std::hypot(u - c.u, v - c.v) : far;
  return m;
}

FiltrationMap grayscale_filtration(const GrayImage& img) {
  FiltrationMap m;
  m.height = img.height;
  m.width = img.width;
  m.values = img.data;
  m.ceiling = m.values.empty() ? 0.0 : *std::max_element(m.values.begin(), m.values.end());
  return m;
}

FiltrationSet FiltrationSet::standard() {
  FiltrationSet s;
  s.directions = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}, {-1, 0}, {0, -1}};
  s.centers = {{23, 7}, {23, 15}, {23, 23}, {7, 23}, {7, 15},
               {7, 7},  {15, 23}, {15, 15}, {15, 7}};
  s.reference_size = 32;
  return s;
}

std::vector<std::string> FiltrationSet::names() const {
  std::vector<std::string> out;
  out.reserve(count());
  char buf[64];
  for (const Direction& d : directions) {
    std::snprintf(buf, sizeof buf, "height(%g,%g)", d.du, d.dv);
    out.emplace_back(buf);
  }
  for (const Center& c : centers) {
    std::snprintf(buf, sizeof buf, "radial(%d,%d)", c.u, c.v);
    out.emplace_back(buf);
  }
  return out;
}

Center FiltrationSet::scaled_center(const Center& c, int height, int width) const {
  auto scale = [this](int x, int n) {
    int s = static_cast<int>(std::lround(static_cast<double>(x) * n / reference_size));
    return std::clamp(s, 0, n - 1);
  };
  return {scale(c.u, height), scale(c.v, width)};
}

std::vector<FiltrationMap> FiltrationSet::build_maps(const BinaryImage& mask) const {
  std::vector<FiltrationMap> maps;
  maps.reserve(count());
  for (const Direction& d : directions) maps.push_back(height_filtration(mask, d));
  for (const Center& c : centers)
    maps.push_back(radial_filtration(mask, scaled_center(c, mask.height, mask.width)));
  return maps;
}

}  // namespace topoharq
