#pragma once

#include <string>
#include <vector>

#include "topoharq/image.hpp"

namespace topoharq {

/// Sweep direction for half-plane filtrations; must be nonzero. Only the
/// direction matters, the magnitude is normalized away.
struct Direction {
  double du = 0;
  double dv = 0;
};

/// Grid pixel acting as the origin of a radial sweep, (row, col).
struct Center {
  int u = 0;
  int v = 0;
};

/// Scalar field over the pixel grid plus the value at which the sweep
/// saturates. Every entry lies in [0, ceiling]; pixels outside the mask of
/// a mask-based sweep carry the ceiling so they enter last. The ceiling is
/// also where essential homology classes are capped downstream.
struct FiltrationMap {
  int height = 0;
  int width = 0;
  std::vector<double> values;
  double ceiling = 0;

  double at(int u, int v) const { return values[static_cast<size_t>(u) * width + v]; }
};

/// Sweep a half-plane across the mask: an active pixel enters at its inner
/// product with the unit direction, shifted so the smallest value over the
/// whole grid is zero. Background pixels enter at the shifted maximum over
/// the grid, which is also the ceiling.
FiltrationMap height_filtration(const BinaryImage& img, Direction psi);

/// Grow a disc around c: an active pixel enters at its Euclidean distance
/// from c, background at the largest grid distance (= ceiling). c must lie
/// on the grid.
FiltrationMap radial_filtration(const BinaryImage& img, Center c);

/// Sublevel sweep of the luma values themselves; ceiling = max luma.
FiltrationMap grayscale_filtration(const GrayImage& img);

/// The standard sweep family: eight directions and nine centers. Centers
/// are stated on a square reference grid and rescale proportionally (with
/// rounding) to the actual image size.
struct FiltrationSet {
  std::vector<Direction> directions;
  std::vector<Center> centers;  // reference-grid coordinates
  int reference_size = 32;

  static FiltrationSet standard();

  size_t count() const { return directions.size() + centers.size(); }

  /// Stable labels, directions first: "height(1,0)", ..., "radial(23,7)", ...
  std::vector<std::string> names() const;

  Center scaled_center(const Center& c, int height, int width) const;

  /// All maps for one mask, in names() order.
  std::vector<FiltrationMap> build_maps(const BinaryImage& mask) const;
};

}  // namespace topoharq
