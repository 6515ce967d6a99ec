#pragma once

#include <span>
#include <string>
#include <vector>

#include "carnot/numeric.hpp"

namespace carnot {

// One entry of the structure tensor: beta(e_i, e_j) += value * f_k, where
// e_* are weight-1 basis vectors and f_k is the k-th weight-2 coordinate.
struct BetaEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  int64_t value = 0;
};

// A step-2 graded group in exponential coordinates: points are integer
// vectors split as (x1, x2) with m1 weight-1 and m2 weight-2 components,
// and the product is (x1, x2) * (y1, y2) = (x1 + y1, x2 + y2 + beta(x1, y1)).
// Any bilinear beta yields an associative product; the induced bracket is
// [u, v] = beta(u, v) - beta(v, u).
struct GroupSpec {
  std::string name;
  int m1 = 0;
  int m2 = 0;
  std::vector<BetaEntry> beta;
  // Optional mass-scaling exponents k(1..n); filled by weight_table() when
  // absent and the group shape allows a default.
  std::vector<int> k_override;

  int dim() const { return m1 + m2; }
};

struct Point {
  int n = 0;
  Vec coords{};
};

// Per-axis scaling weights and mass exponents of one group.
struct WeightTable {
  int n = 0;
  std::array<int, kMaxN> axis_weights{};
  // k[d] for d = 0..n; k[0] = 0 always.
  std::array<int, kMaxN + 1> k{};
  int kappa = 0;
};

struct GeneratorStep {
  int axis = 0;  // weight-1 axis index, < m1
  int sign = 1;  // +1 or -1
};

GroupSpec heisenberg_h3();
GroupSpec heisenberg_h5();
GroupSpec group_preset(const std::string& name);

// Throws std::invalid_argument on any violated structural requirement:
// dimensions, diagonal beta entries, or a bracket that does not generate
// the weight-2 lattice over the integers.
void validate(const GroupSpec& g);

WeightTable weight_table(const GroupSpec& g);

Point identity(const GroupSpec& g);
Point make_point(const GroupSpec& g, std::initializer_list<int64_t> coords);

Point mul(const GroupSpec& g, const Point& p, const Point& q);
Point inv(const GroupSpec& g, const Point& p);

// Dyadic scaling automorphism s_{2^i}: weight-1 coordinates scale by 2^i,
// weight-2 by 4^i. Requires i >= 0 so lattice points stay lattice points.
Point scale(const GroupSpec& g, int i, const Point& p);

// Homogeneous quasi-norm max(|x1|_inf, ceil(sqrt(|x2|_inf))), exact.
int64_t quasi_norm(const GroupSpec& g, const Point& p);

// Word in the weight-1 unit generators composing to exactly p from the
// identity. Walks x1 greedily axis by axis, then realizes the weight-2
// residual by commutator rectangles.
std::vector<GeneratorStep> horizontal_path(const GroupSpec& g, const Point& p);

Point step_point(const GroupSpec& g, const GeneratorStep& s);
Point apply_steps(const GroupSpec& g, Point base, std::span<const GeneratorStep> steps);

}  // namespace carnot
