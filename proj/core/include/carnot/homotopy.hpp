#pragma once

#include "carnot/coarsen.hpp"

namespace carnot {

// Closed axis-aligned box in fine units; flat along axes with lo == hi.
struct CarrierBox {
  int n = 0;
  std::array<int64_t, kMaxN> lo{}, hi{};
  bool contains(const GridCell& cell) const;
};

// Closure of the minimal coarse cell containing the fine cell (coarse grid
// in standard position, one scale up).
CarrierBox carrier_box(const Grid& g, const GridCell& fine);

// Explicit chain contraction of a box complex: returns F with boundary(F)=z
// for every cycle z of dimension >= 1 supported in B. Contracts toward the
// box's lower corner, one axis at a time in ascending order.
Chain contract_box(const Grid& g, const Chain& z, const CarrierBox& B);

// The chain homotopy on a single fine cell against the standard coarse grid;
// satisfies boundary(Q(t)) + Q(boundary(t)) = subdivide(P(t)) - t with
// support inside carrier_box(t).
Chain cell_homotopy(const Grid& g, const GridCell& fine);

struct HomotopyStep {
  Offset offset;
  Chain alpha_next;     // coarsen(alpha, offset), one scale up
  Chain bridge;         // H with boundary(H) = subdivide(alpha_next, offset) - alpha
  int64_t bridge_mass = 0;
};

// One scale-gluing step: coarsens the cycle at the given offset and builds
// the bridge chain certifying the approximation.
HomotopyStep chain_homotopy_Q(const Grid& g, const Chain& alpha, const Offset& o);

}  // namespace carnot
