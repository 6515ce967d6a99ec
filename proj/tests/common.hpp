#pragma once

#include <random>

#include "carnot/chain.hpp"

namespace carnot::testutil {

// Seeded random chain with cells drawn from [0, extent)^n, any axis set of
// the requested dimension, coefficients in {-3..3} \ {0}.
inline Chain random_chain(const Grid& g, int scale, int dim, int64_t extent, uint64_t seed,
                          int ncells) {
  std::vector<uint32_t> masks;
  for (uint32_t m = 0; m < (1u << g.n); ++m)
    if (std::popcount(m) == dim) masks.push_back(m);
  std::mt19937_64 rng(seed);
  ChainBuilder b(scale, dim);
  for (int i = 0; i < ncells; ++i) {
    GridCell cell;
    cell.scale = scale;
    cell.axes = masks[rng() % masks.size()];
    for (int j = 0; j < g.n; ++j) cell.corner[j] = static_cast<int64_t>(rng() % extent);
    int64_t coeff = 1 + static_cast<int64_t>(rng() % 3);
    if (rng() % 2) coeff = -coeff;
    b.add(cell, coeff);
  }
  return b.take();
}

}  // namespace carnot::testutil
