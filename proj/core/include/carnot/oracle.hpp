#pragma once

#include <optional>

#include "carnot/chain.hpp"

namespace carnot {

// Closed box of base-scale vertices, lo <= coordinate <= hi per axis.
struct WindowBox {
  Vec lo{}, hi{};
};

WindowBox bounding_window(const Grid& g, const Chain& c, int64_t margin = 0);

// Finite base-scale complex over a window box with explicit cell indexing.
struct WindowComplex {
  Grid grid;
  WindowBox box;

  std::vector<GridCell> cells(int dim) const;
  int64_t cell_count(int dim) const;
  bool contains(const GridCell& cell) const;
};

WindowComplex make_window(const Grid& g, const WindowBox& box);

struct MatrixEntry {
  int64_t row = 0;
  int64_t col = 0;
  int64_t value = 0;
};

// Sparse boundary matrix from dim-cells (columns) to (dim-1)-cells (rows).
std::vector<MatrixEntry> boundary_matrix(const WindowComplex& w, int dim);

struct LpOptions {
  int64_t max_variables = 100000;
  int max_bb_nodes = 500;
};

struct LpFilling {
  Rational lower_bound;               // exact LP value; valid for all integral fillings in W
  std::optional<Chain> filling;       // integral optimum when found
  bool dual_certified = false;
};

// Minimal weighted-l1 filling of a cycle inside the window, by exact
// rational simplex on the split-variable formulation; integral refinement by
// branch and bound when the LP vertex is fractional. The returned bound is
// validated against the exact dual solution.
LpFilling minimal_filling_lp(const WindowComplex& w, const Chain& zeta,
                             const LpOptions& opt = {});

// The unique top-dimensional filling of an (n-1)-cycle in a box window,
// found by sweeping integer elimination along axis 0.
Chain unique_top_filling(const WindowComplex& w, const Chain& zeta);

// Exact sum over lattice translations g of |i(g . a, b)| for chains of
// complementary dimensions, restricted to translates meeting the window.
int64_t translate_intersection_sum(const Grid& g, const Chain& a, const Chain& b,
                                   const WindowBox& window);

}  // namespace carnot
