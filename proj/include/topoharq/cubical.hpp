#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "topoharq/filtration.hpp"
#include "topoharq/rng.hpp"

namespace topoharq {

/// One elementary cube of the vertex construction over a filtration map.
/// Pixels are the vertices, edges join 4-adjacent pixels, squares fill unit
/// quadruples. (u, v) is the smallest vertex of the cube; kind separates
/// the two edges sharing an anchor (the horizontal edge precedes the
/// vertical one in the lexicographic vertex order).
struct Cube {
  enum Kind : uint8_t { vertex = 0, edge_h = 1, edge_v = 2, square = 3 };
  int u = 0;
  int v = 0;
  Kind kind = vertex;

  int dim() const { return kind == vertex ? 0 : kind == square ? 2 : 1; }
};

/// All cubes of a map ordered by (value, dimension, anchor, kind). A cube's
/// value is the max over its vertices, so every cube sorts after its faces
/// and each prefix of the order is a valid complex.
class FilteredComplex {
public:
  explicit FilteredComplex(const FiltrationMap& map);

  size_t size() const { return cubes_.size(); }
  const Cube& cube(size_t i) const { return cubes_[i]; }
  double value(size_t i) const { return values_[i]; }
  int dim(size_t i) const { return cubes_[i].dim(); }
  double ceiling() const { return ceiling_; }

  /// Sorted position of a cube identified by its grid encoding.
  int32_t position_of(const Cube& c) const;

  /// Reshuffles cubes that tie on (value, dimension). Any order inside such
  /// a group keeps faces before cofaces, so the diagram must not change;
  /// the pairing tests exercise exactly that.
  void shuffle_ties(Rng& rng);

private:
  void index_positions();

  std::vector<Cube> cubes_;     // sorted
  std::vector<double> values_;  // parallel to cubes_
  std::vector<int32_t> position_;
  int height_ = 0;
  int width_ = 0;
  double ceiling_ = 0;
};

/// Sparse boundary matrix over GF(2) in the complex's sorted order; column
/// j lists the positions of the faces of cube j in ascending order.
struct BoundaryMatrix {
  std::vector<std::vector<int32_t>> cols;
  std::vector<uint8_t> dims;
};

BoundaryMatrix boundary_matrix(const FilteredComplex& fc);

/// Result of the column reduction: birth/death position pairs plus the
/// positions whose classes never die.
struct Reduction {
  std::vector<std::pair<int32_t, int32_t>> pairs;
  std::vector<int32_t> essential;
};

/// Left-to-right column reduction with the clearing shortcut: columns are
/// processed by descending dimension and a column that shows up as some
/// pivot's birth is zeroed without being reduced itself.
Reduction reduce(const BoundaryMatrix& bm);

struct Interval {
  double birth = 0;
  double death = 0;
  bool essential = false;

  double persistence() const { return death - birth; }
};

/// Persistence diagram split by homology dimension q in {0, 1}. Essential
/// classes are capped at the map ceiling and kept; pairs whose birth and
/// death values coincide are dropped at construction.
struct PersistenceDiagram {
  std::array<std::vector<Interval>, 2> intervals;
  double ceiling = 0;

  const std::vector<Interval>& dim(int q) const { return intervals[q]; }
};

PersistenceDiagram persistence_diagram(const FilteredComplex& fc, const Reduction& red);

/// Build, reduce and extract in one go.
PersistenceDiagram compute_diagram(const FiltrationMap& map);

}  // namespace topoharq
