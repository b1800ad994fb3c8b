#include "topoharq/cubical.hpp"

#include <algorithm>
#include <stdexcept>

namespace topoharq {

namespace {

inline size_t linear_id(const Cube& c, int height, int width) {
  return static_cast<size_t>(c.kind) * height * width + static_cast<size_t>(c.u) * width + c.v;
}

}  // namespace

FilteredComplex::FilteredComplex(const FiltrationMap& map)
    : height_(map.height), width_(map.width), ceiling_(map.ceiling) {
  const int H = height_, W = width_;
  if (H <= 0 || W <= 0) throw std::invalid_argument("FilteredComplex: empty map");

  size_t n = static_cast<size_t>(H) * W                // vertices
             + static_cast<size_t>(H) * (W - 1)        // horizontal edges
             + static_cast<size_t>(H - 1) * W          // vertical edges
             + static_cast<size_t>(H - 1) * (W - 1);   // squares
  cubes_.reserve(n);
  values_.reserve(n);

  auto px = [&](int u, int v) { return map.values[static_cast<size_t>(u) * W + v]; };
  for (int u = 0; u < H; ++u) {
    for (int v = 0; v < W; ++v) {
      double g = px(u, v);
      cubes_.push_back({u, v, Cube::vertex});
      values_.push_back(g);
      if (v + 1 < W) {
        cubes_.push_back({u, v, Cube::edge_h});
        values_.push_back(std::max(g, px(u, v + 1)));
      }
      if (u + 1 < H) {
        cubes_.push_back({u, v, Cube::edge_v});
        values_.push_back(std::max(g, px(u + 1, v)));
      }
      if (u + 1 < H && v + 1 < W) {
        cubes_.push_back({u, v, Cube::square});
        values_.push_back(
            std::max(std::max(g, px(u, v + 1)), std::max(px(u + 1, v), px(u + 1, v + 1))));
      }
    }
  }

  std::vector<int32_t> order(cubes_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int32_t>(i);
  std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    if (values_[a] != values_[b]) return values_[a] < values_[b];
    int da = cubes_[a].dim(), db = cubes_[b].dim();
    if (da != db) return da < db;
    if (cubes_[a].u != cubes_[b].u) return cubes_[a].u < cubes_[b].u;
    if (cubes_[a].v != cubes_[b].v) return cubes_[a].v < cubes_[b].v;
    return cubes_[a].kind < cubes_[b].kind;
  });

  std::vector<Cube> sc(cubes_.size());
  std::vector<double> sv(values_.size());
  for (size_t i = 0; i < order.size(); ++i) {
    sc[i] = cubes_[order[i]];
    sv[i] = values_[order[i]];
  }
  cubes_ = std::move(sc);
  values_ = std::move(sv);
  index_positions();
}

void FilteredComplex::index_positions() {
  position_.assign(static_cast<size_t>(4) * height_ * width_, -1);
  for (size_t i = 0; i < cubes_.size(); ++i)
    position_[linear_id(cubes_[i], height_, width_)] = static_cast<int32_t>(i);
}

int32_t FilteredComplex::position_of(const Cube& c) const {
  int32_t p = position_[linear_id(c, height_, width_)];
  if (p < 0) throw std::out_of_range("FilteredComplex: no such cube");
  return p;
}

void FilteredComplex::shuffle_ties(Rng& rng) {
  size_t i = 0;
  while (i < cubes_.size()) {
    size_t j = i + 1;
    while (j < cubes_.size() && values_[j] == values_[i] && cubes_[j].dim() == cubes_[i].dim())
      ++j;
    for (size_t a = j - i; a > 1; --a) {  // Fisher-Yates inside the tie group
      size_t b = i + rng.below(a);
      std::swap(cubes_[i + a - 1], cubes_[b]);
    }
    i = j;
  }
  index_positions();
}

BoundaryMatrix boundary_matrix(const FilteredComplex& fc) {
  BoundaryMatrix bm;
  bm.cols.resize(fc.size());
  bm.dims.resize(fc.size());
  for (size_t j = 0; j < fc.size(); ++j) {
    const Cube& c = fc.cube(j);
    bm.dims[j] = static_cast<uint8_t>(c.dim());
    std::vector<int32_t>& col = bm.cols[j];
    switch (c.kind) {
      case Cube::vertex:
        break;
      case Cube::edge_h:
        col = {fc.position_of({c.u, c.v, Cube::vertex}),
               fc.position_of({c.u, c.v + 1, Cube::vertex})};
        break;
      case Cube::edge_v:
        col = {fc.position_of({c.u, c.v, Cube::vertex}),
               fc.position_of({c.u + 1, c.v, Cube::vertex})};
        break;
      case Cube::square:
        col = {fc.position_of({c.u, c.v, Cube::edge_h}),
               fc.position_of({c.u, c.v, Cube::edge_v}),
               fc.position_of({c.u, c.v + 1, Cube::edge_v}),
               fc.position_of({c.u + 1, c.v, Cube::edge_h})};
        break;
    }
    std::sort(col.begin(), col.end());
  }
  return bm;
}

namespace {

// GF(2) column addition: symmetric difference of two ascending row lists.
void add_column(std::vector<int32_t>& dst, const std::vector<int32_t>& src,
                std::vector<int32_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(dst.begin(), dst.end(), src.begin(), src.end(),
                                std::back_inserter(scratch));
  dst.swap(scratch);
}

}  // namespace

Reduction reduce(const BoundaryMatrix& bm) {
  const size_t n = bm.cols.size();
  std::vector<std::vector<int32_t>> cols(bm.cols);
  // pivot_of[i] = column whose lowest entry is row i, or -1.
  std::vector<int32_t> pivot_of(n, -1);
  std::vector<uint8_t> cleared(n, 0);
  std::vector<int32_t> scratch;

  uint8_t max_dim = 0;
  for (size_t j = 0; j < n; ++j) max_dim = std::max(max_dim, bm.dims[j]);

  Reduction out;
  // Descending dimension so that clearing skips every paired birth column.
  for (int d = max_dim; d >= 1; --d) {
    for (size_t j = 0; j < n; ++j) {
      if (bm.dims[j] != d || cleared[j]) continue;
      std::vector<int32_t>& col = cols[j];
      while (!col.empty()) {
        int32_t low = col.back();
        int32_t other = pivot_of[low];
        if (other < 0) break;
        add_column(col, cols[other], scratch);
      }
      if (!col.empty()) {
        int32_t low = col.back();
        pivot_of[low] = static_cast<int32_t>(j);
        out.pairs.emplace_back(low, static_cast<int32_t>(j));
        cleared[low] = 1;
        cols[low].clear();
      }
    }
  }
  // Whatever was never a pivot's birth and reduced to zero is essential.
  std::vector<uint8_t> dies(n, 0);
  for (const auto& [birth, death] : out.pairs) {
    dies[birth] = 1;
    dies[death] = 1;  // death columns are nonzero, not class births
  }
  for (size_t j = 0; j < n; ++j)
    if (!dies[j]) out.essential.push_back(static_cast<int32_t>(j));
  return out;
}

PersistenceDiagram persistence_diagram(const FilteredComplex& fc, const Reduction& red) {
  PersistenceDiagram pd;
  pd.ceiling = fc.ceiling();
  for (const auto& [i, j] : red.pairs) {
    double b = fc.value(i);
    double d = fc.value(j);
    if (b == d) continue;
    int q = fc.dim(i);
    if (q <= 1) pd.intervals[q].push_back({b, d, false});
  }
  for (int32_t i : red.essential) {
    int q = fc.dim(i);
    if (q <= 1) pd.intervals[q].push_back({fc.value(i), fc.ceiling(), true});
  }
  for (auto& side : pd.intervals) {
    std::sort(side.begin(), side.end(), [](const Interval& a, const Interval& b) {
      if (a.birth != b.birth) return a.birth < b.birth;
      if (a.death != b.death) return a.death < b.death;
      return a.essential < b.essential;
    });
  }
  return pd;
}

PersistenceDiagram compute_diagram(const FiltrationMap& map) {
  FilteredComplex fc(map);
  return persistence_diagram(fc, reduce(boundary_matrix(fc)));
}

}  // namespace topoharq
