#include "doctest.h"

#include "topoharq/filtration.hpp"

#include <cmath>
#include <stdexcept>

#include "testutil.hpp"

using namespace topoharq;

namespace {

const double kSqrt2 = std::sqrt(2.0);

BinaryImage single_active(int h, int w, int u, int v) {
  std::vector<int> m(static_cast<size_t>(h) * w, 0);
  m[static_cast<size_t>(u) * w + v] = 1;
  return testutil::mask_grid(h, w, m);
}

}  // namespace

TEST_CASE("height sweep pins the axis aligned example") {
  BinaryImage mask = single_active(4, 4, 2, 3);
  FiltrationMap m = height_filtration(mask, {1, 0});

  CHECK(m.ceiling == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(m.at(2, 3) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(m.at(0, 0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(m.at(3, 3) == doctest::Approx(3.0).epsilon(1e-15));

  // Reversed direction counts rows from the other side.
  FiltrationMap r = height_filtration(mask, {-1, 0});
  CHECK(r.ceiling == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(r.at(2, 3) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("height sweep projects onto the unit diagonal") {
  BinaryImage mask = single_active(4, 4, 1, 1);
  FiltrationMap m = height_filtration(mask, {1, 1});
  CHECK(m.at(1, 1) == doctest::Approx(kSqrt2).epsilon(1e-15));
  CHECK(m.ceiling == doctest::Approx(3.0 * kSqrt2).epsilon(1e-15));

  // Only the direction matters, not its magnitude.
  FiltrationMap big = height_filtration(mask, {2, 2});
  for (size_t i = 0; i < m.values.size(); ++i)
    CHECK(big.values[i] == doctest::Approx(m.values[i]).epsilon(1e-12));
}

TEST_CASE("height shift and ceiling ignore the mask") {
  // Same grid, very different masks: background level must not move.
  BinaryImage empty = testutil::mask_grid(3, 5, std::vector<int>(15, 0));
  BinaryImage full = testutil::mask_grid(3, 5, std::vector<int>(15, 1));
  FiltrationMap me = height_filtration(empty, {1, -1});
  FiltrationMap mf = height_filtration(full, {1, -1});

  CHECK(me.ceiling == doctest::Approx(mf.ceiling).epsilon(1e-15));
  for (double v : me.values) CHECK(v == doctest::Approx(me.ceiling).epsilon(1e-15));

  // Full mask realizes both extremes of the sweep.
  double lo = 1e300, hi = -1e300;
  for (double v : mf.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(hi == doctest::Approx(mf.ceiling).epsilon(1e-15));

  CHECK_THROWS_AS(height_filtration(full, {0, 0}), std::invalid_argument);
}

TEST_CASE("radial sweep measures distance from the center") {
  BinaryImage full = testutil::mask_grid(3, 3, std::vector<int>(9, 1));
  FiltrationMap m = radial_filtration(full, {1, 1});

  CHECK(m.at(1, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(m.at(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.at(0, 0) == doctest::Approx(kSqrt2).epsilon(1e-15));
  CHECK(m.ceiling == doctest::Approx(kSqrt2).epsilon(1e-15));

  // Off-center origin: the far corner sets the ceiling, active or not.
  FiltrationMap c = radial_filtration(single_active(3, 3, 0, 0), {0, 0});
  CHECK(c.ceiling == doctest::Approx(2.0 * kSqrt2).epsilon(1e-15));
  CHECK(c.at(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(c.at(2, 2) == doctest::Approx(2.0 * kSqrt2).epsilon(1e-15));

  CHECK_THROWS_AS(radial_filtration(full, {3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(radial_filtration(full, {0, -1}), std::invalid_argument);
}

TEST_CASE("radial sweep is symmetric around a centered origin") {
  BinaryImage full = testutil::mask_grid(5, 5, std::vector<int>(25, 1));
  FiltrationMap m = radial_filtration(full, {2, 2});
  for (int u = 0; u < 5; ++u)
    for (int v = 0; v < 5; ++v) {
      CHECK(m.at(u, v) == doctest::Approx(m.at(4 - u, 4 - v)).epsilon(1e-15));
      CHECK(m.at(u, v) == doctest::Approx(m.at(v, u)).epsilon(1e-15));
    }
}

TEST_CASE("grayscale sweep keeps raw luma and tops out at the max") {
  GrayImage g = testutil::gray_grid(2, 2, {12.5, 80.0, 3.25, 200.0});
  FiltrationMap m = grayscale_filtration(g);
  CHECK(m.at(0, 0) == 12.5);
  CHECK(m.at(1, 0) == 3.25);
  CHECK(m.ceiling == 200.0);
}

TEST_CASE("standard sweep family has 17 stable names") {
  FiltrationSet s = FiltrationSet::standard();
  REQUIRE(s.count() == 17);

  auto names = s.names();
  REQUIRE(names.size() == 17);
  CHECK(names[0] == "height(1,0)");
  CHECK(names[2] == "height(1,1)");
  CHECK(names[3] == "height(1,-1)");
  CHECK(names[7] == "height(0,-1)");
  CHECK(names[8] == "radial(23,7)");
  CHECK(names[16] == "radial(15,7)");
}

TEST_CASE("reference centers rescale with the image size") {
  FiltrationSet s = FiltrationSet::standard();

  // At the reference size the centers are used as stated.
  Center same = s.scaled_center({23, 7}, 32, 32);
  CHECK(same.u == 23);
  CHECK(same.v == 7);

  // Half size: 23 * 16/32 = 11.5 rounds away from zero, 7 * 16/32 = 3.5 too.
  Center half = s.scaled_center({23, 7}, 16, 16);
  CHECK(half.u == 12);
  CHECK(half.v == 4);

  // Non-square grids scale per axis and clamp onto the grid.
  Center rect = s.scaled_center({23, 23}, 8, 64);
  CHECK(rect.u == 6);
  CHECK(rect.v == 46);
  Center tiny = s.scaled_center({23, 23}, 1, 1);
  CHECK(tiny.u == 0);
  CHECK(tiny.v == 0);
}

TEST_CASE("build_maps emits every sweep in name order") {
  FiltrationSet s = FiltrationSet::standard();
  BinaryImage mask = single_active(6, 6, 2, 4);
  auto maps = s.build_maps(mask);
  REQUIRE(maps.size() == 17);

  // First map is the (1,0) sweep of the same mask.
  FiltrationMap direct = height_filtration(mask, {1, 0});
  CHECK(maps[0].values == direct.values);

  // Ninth map is the first radial sweep with its scaled center.
  FiltrationMap rad = radial_filtration(mask, s.scaled_center({23, 7}, 6, 6));
  CHECK(maps[8].values == rad.values);

  for (const auto& m : maps) {
    CHECK(m.height == 6);
    CHECK(m.width == 6);
    for (double v : m.values) {
      CHECK(v >= 0.0);
      CHECK(v <= m.ceiling);
    }
  }
}
