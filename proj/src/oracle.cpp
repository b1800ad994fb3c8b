#include "topoharq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace topoharq {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::pair<int, int> betti_at(const FiltrationMap& map, double eta) {
  const int H = map.height, W = map.width;
  auto in = [&](int u, int v) { return map.values[static_cast<size_t>(u) * W + v] <= eta; };

  std::vector<int> parent(static_cast<size_t>(H) * W);
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);

  long vertices = 0, edges = 0, faces = 0;
  for (int u = 0; u < H; ++u) {
    for (int v = 0; v < W; ++v) {
      if (!in(u, v)) continue;
      ++vertices;
      int id = u * W + v;
      if (v + 1 < W && in(u, v + 1)) {
        ++edges;
        parent[find_root(parent, id)] = find_root(parent, id + 1);
      }
      if (u + 1 < H && in(u + 1, v)) {
        ++edges;
        parent[find_root(parent, id)] = find_root(parent, id + W);
      }
      if (u + 1 < H && v + 1 < W && in(u, v + 1) && in(u + 1, v) && in(u + 1, v + 1)) ++faces;
    }
  }

  int components = 0;
  for (int u = 0; u < H; ++u)
    for (int v = 0; v < W; ++v)
      if (in(u, v) && find_root(parent, u * W + v) == u * W + v) ++components;

  int beta1 = components - static_cast<int>(vertices - edges + faces);
  return {components, beta1};
}

namespace {

struct Point {
  double b, d;
};

double linf(const Point& p, const Point& q) {
  return std::max(std::abs(p.b - q.b), std::abs(p.d - q.d));
}

double diag_gap(const Point& p) { return (p.d - p.b) / 2.0; }

// Perfect-matching feasibility at tolerance delta. Left side: points of A
// then |B| diagonal slots; right side: points of B then |A| diagonal slots.
// Kuhn's augmenting-path search; edges are evaluated on the fly.
struct Matcher {
  const std::vector<Point>& a;
  const std::vector<Point>& b;
  double delta;
  std::vector<int> match_right;  // right node -> left node
  std::vector<char> visited;

  bool edge(size_t left, size_t right) const {
    bool left_diag = left >= a.size();
    bool right_diag = right >= b.size();
    if (left_diag && right_diag) return true;
    if (left_diag) return diag_gap(b[right]) <= delta;
    if (right_diag) return diag_gap(a[left]) <= delta;
    return linf(a[left], b[right]) <= delta;
  }

  bool try_augment(size_t left) {
    for (size_t r = 0; r < match_right.size(); ++r) {
      if (visited[r] || !edge(left, r)) continue;
      visited[r] = 1;
      if (match_right[r] < 0 || try_augment(static_cast<size_t>(match_right[r]))) {
        match_right[r] = static_cast<int>(left);
        return true;
      }
    }
    return false;
  }

  bool feasible() {
    size_t total = a.size() + b.size();
    match_right.assign(total, -1);
    for (size_t l = 0; l < total; ++l) {
      visited.assign(total, 0);
      if (!try_augment(l)) return false;
    }
    return true;
  }
};

}  // namespace

double bottleneck_distance(const PersistenceDiagram& pd_a, const PersistenceDiagram& pd_b, int q) {
  std::vector<Point> a, b;
  for (const Interval& iv : pd_a.dim(q)) a.push_back({iv.birth, iv.death});
  for (const Interval& iv : pd_b.dim(q)) b.push_back({iv.birth, iv.death});
  if (a.size() > 64 || b.size() > 64)
    throw std::invalid_argument("bottleneck_distance: diagram too large for the oracle");
  if (a.empty() && b.empty()) return 0.0;

  std::vector<double> candidates{0.0};
  for (const Point& p : a) candidates.push_back(diag_gap(p));
  for (const Point& p : b) candidates.push_back(diag_gap(p));
  for (const Point& p : a)
    for (const Point& r : b) candidates.push_back(linf(p, r));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    Matcher m{a, b, candidates[mid], {}, {}};
    if (m.feasible())
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

}  // namespace topoharq
