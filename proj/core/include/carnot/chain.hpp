#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "carnot/group.hpp"
#include "carnot/numeric.hpp"

namespace carnot {

// Ambient grid geometry shared by all chain operations: dimension, per-axis
// scaling weights, and the mass exponents k(d).
struct Grid {
  int n = 0;
  std::array<int, kMaxN> w{};
  std::array<int, kMaxN + 1> k{};
  int kappa = 0;

  // Fine cells per coarse cell along axis j for one scale step.
  int64_t ratio(int j) const { return pow2(w[j]); }
};

Grid make_grid(const WeightTable& wt);
Grid make_grid(const GroupSpec& g);

// One cell of the scale-i anisotropic grid: spans the axes in the bitmask,
// corner coordinates are in scale-i units. Along a spanned axis j the
// footprint in base units is [corner_j * 2^{i w_j}, (corner_j + 1) * 2^{i w_j}),
// along the others the single coordinate corner_j * 2^{i w_j}.
struct GridCell {
  int32_t scale = 0;
  uint32_t axes = 0;
  Vec corner{};

  int dim() const { return std::popcount(axes); }
  bool spans(int j) const { return (axes >> j) & 1u; }
  friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

// Sparse integer chain; all cells share one scale and dimension.
struct Chain {
  int32_t scale = 0;
  int32_t dim = 0;
  std::map<GridCell, int64_t> cells;

  bool zero() const { return cells.empty(); }
  int64_t coeff(const GridCell& c) const {
    auto it = cells.find(c);
    return it == cells.end() ? 0 : it->second;
  }
  friend bool operator==(const Chain&, const Chain&) = default;
};

// Accumulates (cell, coeff) pairs and folds duplicates; compacts itself when
// the raw buffer grows past a threshold so bulk operations stay bounded.
class ChainBuilder {
 public:
  ChainBuilder(int32_t scale, int32_t dim) : scale_(scale), dim_(dim) {}
  void add(const GridCell& cell, int64_t coeff);
  Chain take();

 private:
  void compact();
  int32_t scale_;
  int32_t dim_;
  std::vector<std::pair<GridCell, int64_t>> buf_;
};

GridCell make_cell(int32_t scale, std::initializer_list<int> axes,
                   std::initializer_list<int64_t> corner);
Chain single_cell(const GridCell& cell, int64_t coeff = 1);

int64_t l1(const Chain& c);

// Native-scale mass: l1 * 2^{scale * k(dim)}.
int64_t mass(const Grid& g, const Chain& c);
int64_t cell_mass_weight(const Grid& g, int scale, int dim);

Chain add(const Chain& a, const Chain& b);
Chain negate(Chain c);
Chain translate(const Chain& c, const Vec& delta);

// Cubical boundary with alternating signs per spanned-axis position.
Chain boundary(const Chain& c);

// Splits each cell into its 2^{w_j}-per-axis children one scale down. The
// offset variant places the children on the fine grid shifted by the given
// per-axis offset (fine units).
Chain subdivide(const Grid& g, const Chain& c);
Chain subdivide(const Grid& g, const Chain& c, const Vec& fine_offset);

bool is_cycle(const Chain& c);

// Boundary of the solid anisotropic box prod_j [0, r^{w_j}) at scale 0.
Chain sphere_cycle(const Grid& g, int64_t r);

// Closed hexagonal 1-cycle of l1 = 6r tracing x, y, z runs of length r up
// and back; the z runs use the first weight-2 axis.
Chain commutator_loop(const Grid& g, int64_t r);

// Boundary of a seeded random (dim+1)-chain supported in [0, extent)^n;
// deterministic per seed, always a cycle.
Chain random_cycle(const Grid& g, int dim, int64_t extent, uint64_t seed);

}  // namespace carnot
