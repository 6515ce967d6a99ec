#pragma once

#include <utility>
#include <vector>

#include "carnot/chain.hpp"

namespace carnot {

// Translate of the coarse grid relative to the fine grid for one coarsening
// step, in fine units: 0 <= o_j < 2^{w_j}. The offset domain has 2^kappa
// elements.
struct Offset {
  std::array<int64_t, kMaxN> o{};
  friend auto operator<=>(const Offset&, const Offset&) = default;
};

// All 2^kappa offsets in lexicographic order.
std::vector<Offset> all_offsets(const Grid& g);

Vec offset_vec(const Offset& o);

// Dual of a coarse d-cell: the transversal (n-d)-box spanning the complement
// axes, centered at the cell's geometric center, one coarse cell wide,
// half-open on the upper side. Coordinates are in fine units.
struct DualCell {
  int n = 0;
  uint32_t cell_axes = 0;                 // axes of the primal coarse cell
  std::array<int64_t, kMaxN> center{};    // along cell axes: the center plane
  std::array<int64_t, kMaxN> lo{}, hi{};  // along complement axes: [lo, hi)
};

DualCell dual_cell(const Grid& g, const GridCell& coarse, const Offset& o);

// Signed count of transversal crossings of a fine chain with one dual cell
// under the half-open convention; all orientation signs are +1.
int64_t intersection_number(const Grid& g, const Chain& fine, const DualCell& dual);

// Dual-skeleton approximation: the coarse chain whose coefficient on each
// coarse cell is the intersection number of the input with that cell's dual.
// Commutes with the boundary for every offset and restores subdivided coarse
// chains at offset zero.
Chain coarsen(const Grid& g, const Chain& c, const Offset& o);

// Exact mean of l1(coarsen(c, o)) over the full offset domain.
Rational offset_l1_average(const Grid& g, const Chain& c);

// Offset minimizing l1 of the coarsening, ties broken lexicographically.
std::pair<Offset, Chain> best_offset(const Grid& g, const Chain& c);

}  // namespace carnot
