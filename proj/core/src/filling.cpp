#include "carnot/filling.hpp"

#include <chrono>
#include <cmath>

namespace carnot {

namespace {

// c_plan * V * 2^{I k} < 2^{kappa I}, evaluated exactly.
bool plan_inequality(const Rational& c_plan, int64_t V, int k, int kappa, int I) {
  Rational lhs = c_plan * V * Rational(BigInt(1) << (I * k));
  Rational rhs = Rational(BigInt(1) << (I * kappa));
  return lhs < rhs;
}

Vec add_vec(const Vec& a, const Vec& b) {
  Vec r{};
  for (int j = 0; j < kMaxN; ++j) r[j] = a[j] + b[j];
  return r;
}

// Offset at scale i, converted to base units.
Vec offset_base_units(const Grid& g, const Offset& o, int scale) {
  Vec r{};
  for (int j = 0; j < g.n; ++j) r[j] = o.o[j] * pow2(scale * g.w[j]);
  return r;
}

Chain to_base(const Grid& g, const Chain& c, const Vec& anchor) {
  Chain cur = c;
  for (int s = c.scale; s > 0; --s) cur = subdivide(g, cur);
  return translate(cur, anchor);
}

}  // namespace

FillingPlan plan(const Grid& g, int64_t V, int d, const Rational& c_plan) {
  if (d < 1 || d >= g.n) throw std::invalid_argument("cycle dimension must be in [1, n)");
  if (V < 0) throw std::invalid_argument("negative mass");
  if (c_plan <= 0) throw std::invalid_argument("c_plan must be positive");
  int k_dual = g.k[g.n - d];
  int k_fill = g.k[d + 1];
  if (k_dual >= g.kappa)
    throw std::invalid_argument("plan hypothesis k(n-d) < kappa fails");
  if (k_fill + k_dual <= g.kappa)
    throw std::invalid_argument("plan hypothesis k(d+1) + k(n-d) > kappa fails");

  FillingPlan p;
  p.dim = d;
  p.input_mass = V;
  p.predicted_exponent = Rational(k_fill, g.kappa - k_dual);
  p.c_plan = c_plan;
  int I = 1;
  while (!plan_inequality(c_plan, V, k_dual, g.kappa, I)) ++I;
  p.scale_count = I;
  return p;
}

bool MultiscaleChain::zero() const {
  for (const auto& part : parts)
    if (!part.chain.zero()) return false;
  return true;
}

int64_t total_mass(const Grid& g, const MultiscaleChain& m) {
  int64_t total = 0;
  for (const auto& part : m.parts) total += mass(g, part.chain);
  return total;
}

Chain realize_base(const Grid& g, const MultiscaleChain& m) {
  Chain acc;
  acc.dim = m.dim;
  for (const auto& part : m.parts) acc = add(acc, to_base(g, part.chain, part.anchor));
  return acc;
}

Chain boundary_base(const Grid& g, const MultiscaleChain& m) {
  Chain acc;
  acc.dim = m.dim - 1;
  for (const auto& part : m.parts) {
    if (part.chain.zero()) continue;
    acc = add(acc, to_base(g, boundary(part.chain), part.anchor));
  }
  return acc;
}

std::pair<MultiscaleChain, FillingReport> multiscale_fill(const Grid& g, const Chain& alpha,
                                                          const FillOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  if (alpha.scale != 0) throw std::invalid_argument("filling expects a base-scale cycle");
  if (!alpha.zero() && !is_cycle(alpha))
    throw std::invalid_argument("input is not a cycle");

  MultiscaleChain beta;
  beta.dim = alpha.dim + 1;
  FillingReport rep;
  rep.plan = plan(g, mass(g, alpha), alpha.dim, opt.c_plan);

  Chain cur = alpha;
  Vec anchor{};
  int hard_cap = rep.plan.scale_count + opt.extra_scales;
  int i = 0;
  while (!cur.zero()) {
    if (i >= hard_cap) break;
    Offset o;
    Chain next;
    if (opt.offset_policy == OffsetPolicy::kBest) {
      std::tie(o, next) = best_offset(g, cur);
    } else {
      next = coarsen(g, cur, o);
    }
    HomotopyStep step = chain_homotopy_Q(g, cur, o);
    rep.steps.push_back({i, o, l1(cur), l1(step.bridge), step.bridge_mass});
    beta.parts.push_back({static_cast<int32_t>(i), anchor, negate(step.bridge)});
    anchor = add_vec(anchor, offset_base_units(g, o, i));
    cur = std::move(step.alpha_next);
    ++i;
  }
  rep.scales_used = i;
  rep.residual_l1 = l1(cur);
  rep.total_mass = total_mass(g, beta);
  rep.verified = cur.zero() && verify_filling(g, beta, alpha);
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(beta), rep};
}

bool verify_filling(const Grid& g, const MultiscaleChain& beta, const Chain& alpha) {
  if (beta.zero()) return alpha.zero();
  return boundary_base(g, beta) == alpha;
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& series) {
  const size_t n = series.size();
  if (n < 3) throw std::invalid_argument("exponent fit needs at least 3 points");
  double sx = 0, sy = 0;
  for (auto& [v, m] : series) {
    if (v <= 0 || m <= 0) throw std::invalid_argument("fit values must be positive");
    sx += std::log(v);
    sy += std::log(m);
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (auto& [v, m] : series) {
    double dx = std::log(v) - mx, dy = std::log(m) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) throw std::invalid_argument("fit needs distinct abscissae");
  FitResult r;
  r.slope = sxy / sxx;
  double ss_res = syy - r.slope * sxy;
  if (ss_res < 0) ss_res = 0;  // rounding
  r.stderr_slope = std::sqrt(ss_res / static_cast<double>(n - 2) / sxx);
  return r;
}

}  // namespace carnot
