#pragma once

#include <optional>

#include "carnot/homotopy.hpp"

namespace carnot {

struct FillingPlan {
  int dim = 0;
  int64_t input_mass = 0;
  int scale_count = 0;  // I: planned number of coarsening steps
  Rational predicted_exponent;
  Rational c_plan = 1;
};

// Smallest positive I with c_plan * V * 2^{I k(n-d)} < 2^{kappa I}. Throws
// when the exponent hypotheses fail: k(d+1) + k(n-d) > kappa, k(n-d) < kappa.
FillingPlan plan(const Grid& g, int64_t V, int d, const Rational& c_plan = 1);

struct StepRecord {
  int scale = 0;
  Offset offset;
  int64_t alpha_l1 = 0;
  int64_t bridge_l1 = 0;
  int64_t bridge_mass = 0;
};

struct FillingReport {
  FillingPlan plan;
  std::vector<StepRecord> steps;
  int scales_used = 0;
  int64_t residual_l1 = 0;
  int64_t total_mass = 0;
  bool verified = false;
  double wall_ms = 0;
};

// Chain living at one scale, offset from the base frame by an anchor vector
// in base (scale-0) units. Anchors record the accumulated coarse-grid shifts
// of earlier steps.
struct MultiscalePart {
  int32_t scale = 0;
  Vec anchor{};
  Chain chain;
};

// Formal sum of chains at distinct scales with a common dimension; mass is
// the sum of the native-scale masses.
struct MultiscaleChain {
  int32_t dim = 0;
  std::vector<MultiscalePart> parts;

  bool zero() const;
};

int64_t total_mass(const Grid& g, const MultiscaleChain& m);

// Base-frame realization: every part subdivided to scale 0 and translated by
// its anchor, then summed. Intended for small inputs.
Chain realize_base(const Grid& g, const MultiscaleChain& m);

// Boundary of the base-frame realization, computed per part at native scale
// before subdividing (the two orders agree since subdivision is a chain map).
Chain boundary_base(const Grid& g, const MultiscaleChain& m);

enum class OffsetPolicy { kBest, kZero };

struct FillOptions {
  Rational c_plan = 1;
  OffsetPolicy offset_policy = OffsetPolicy::kBest;
  int extra_scales = 8;  // hard cap above the planned scale count
};

// The multiscale filling: repeatedly coarsen at the chosen offset and stack
// the bridge chains until the cycle vanishes. The returned chain satisfies
// boundary_base(beta) == alpha whenever the report is verified.
std::pair<MultiscaleChain, FillingReport> multiscale_fill(const Grid& g, const Chain& alpha,
                                                          const FillOptions& opt = {});

// Exact cell-by-cell comparison of the base-frame boundary with alpha.
bool verify_filling(const Grid& g, const MultiscaleChain& beta, const Chain& alpha);

struct FitResult {
  double slope = 0;
  double stderr_slope = 0;
};

// Ordinary least squares on (log V, log mass); needs at least three points.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& series);

}  // namespace carnot
