#include "carnot/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace carnot {

namespace {

void check_same_group(const GroupSpec& g, const Point& p) {
  if (p.n != g.dim()) throw std::invalid_argument("point does not belong to group " + g.name);
}

// beta(u, v) accumulated into the weight-2 components of out.
void beta_add(const GroupSpec& g, const Vec& u, const Vec& v, Vec& out) {
  for (const BetaEntry& e : g.beta) {
    out[g.m1 + e.k] += e.value * u[e.i] * v[e.j];
  }
}

// Net weight-2 displacement of the unit commutator loop a+ b+ a- b-,
// equal to the bracket [e_a, e_b] once diagonal beta entries are excluded.
std::vector<int64_t> bracket_net(const GroupSpec& g, int a, int b) {
  std::vector<int64_t> net(g.m2, 0);
  for (const BetaEntry& e : g.beta) {
    if (e.i == a && e.j == b) net[e.k] += e.value;
    if (e.i == b && e.j == a) net[e.k] -= e.value;
  }
  return net;
}

struct LoopLattice {
  std::vector<std::pair<int, int>> pairs;       // generator pairs (a < b)
  std::vector<std::vector<int64_t>> nets;       // net per pair, length m2
};

LoopLattice loop_lattice(const GroupSpec& g) {
  LoopLattice lat;
  for (int a = 0; a < g.m1; ++a) {
    for (int b = a + 1; b < g.m1; ++b) {
      auto net = bracket_net(g, a, b);
      if (std::any_of(net.begin(), net.end(), [](int64_t v) { return v != 0; })) {
        lat.pairs.emplace_back(a, b);
        lat.nets.push_back(std::move(net));
      }
    }
  }
  return lat;
}

// Solves sum_p c_p * nets[p] = target over the integers by column-style
// Hermite reduction. Returns false when no integer solution exists.
bool solve_loop_lattice(const LoopLattice& lat, int m2,
                        const std::vector<int64_t>& target,
                        std::vector<int64_t>& coeffs) {
  const int P = static_cast<int>(lat.pairs.size());
  coeffs.assign(P, 0);
  if (P == 0) {
    return std::all_of(target.begin(), target.end(), [](int64_t v) { return v == 0; });
  }
  // M: m2 x P, column-reduced in place; U tracks column operations.
  std::vector<std::vector<int64_t>> M(m2, std::vector<int64_t>(P, 0));
  for (int p = 0; p < P; ++p)
    for (int r = 0; r < m2; ++r) M[r][p] = lat.nets[p][r];
  std::vector<std::vector<int64_t>> U(P, std::vector<int64_t>(P, 0));
  for (int p = 0; p < P; ++p) U[p][p] = 1;

  auto col_swap = [&](int c1, int c2) {
    for (int r = 0; r < m2; ++r) std::swap(M[r][c1], M[r][c2]);
    for (int r = 0; r < P; ++r) std::swap(U[r][c1], U[r][c2]);
  };
  auto col_axpy = [&](int dst, int src, int64_t f) {  // col dst += f * col src
    for (int r = 0; r < m2; ++r) M[r][dst] += f * M[r][src];
    for (int r = 0; r < P; ++r) U[r][dst] += f * U[r][src];
  };

  std::vector<int> pivot_col(m2, -1);
  int pc = 0;
  for (int row = 0; row < m2 && pc < P; ++row) {
    for (;;) {
      int best = -1;
      for (int c = pc; c < P; ++c) {
        if (M[row][c] != 0 && (best == -1 || std::abs(M[row][c]) < std::abs(M[row][best])))
          best = c;
      }
      if (best == -1) break;
      col_swap(pc, best);
      bool clean = true;
      for (int c = pc + 1; c < P; ++c) {
        if (M[row][c] != 0) {
          col_axpy(c, pc, -(M[row][c] / M[row][pc]));
          if (M[row][c] != 0) clean = false;
        }
      }
      if (clean) {
        pivot_col[row] = pc;
        ++pc;
        break;
      }
    }
  }

  // Forward substitution in the echelon system M * y = target.
  std::vector<int64_t> y(P, 0);
  std::vector<int64_t> rem(target);
  for (int row = 0; row < m2; ++row) {
    int c = pivot_col[row];
    if (c == -1) {
      if (rem[row] != 0) return false;
      continue;
    }
    if (rem[row] % M[row][c] != 0) return false;
    y[c] = rem[row] / M[row][c];
    for (int r = row + 1; r < m2; ++r) rem[r] -= M[r][c] * y[c];
  }
  for (int p = 0; p < P; ++p) {
    int64_t acc = 0;
    for (int q = 0; q < P; ++q) acc += U[p][q] * y[q];
    coeffs[p] = acc;
  }
  return true;
}

void emit_run(std::vector<GeneratorStep>& out, int axis, int sign, int64_t count) {
  for (int64_t i = 0; i < count; ++i) out.push_back({axis, sign});
}

// Word a+^s b+^t a-^s b-^t; nets s*t*[e_a, e_b] for diagonal-free beta.
void emit_rectangle(std::vector<GeneratorStep>& out, int a, int b, int64_t s, int64_t t) {
  emit_run(out, a, +1, s);
  emit_run(out, b, +1, t);
  emit_run(out, a, -1, s);
  emit_run(out, b, -1, t);
}

}  // namespace

GroupSpec heisenberg_h3() {
  GroupSpec g;
  g.name = "H3";
  g.m1 = 2;
  g.m2 = 1;
  g.beta = {{0, 1, 0, 1}};
  return g;
}

GroupSpec heisenberg_h5() {
  GroupSpec g;
  g.name = "H5";
  g.m1 = 4;
  g.m2 = 1;
  g.beta = {{0, 1, 0, 1}, {2, 3, 0, 1}};
  return g;
}

GroupSpec group_preset(const std::string& name) {
  if (name == "H3") return heisenberg_h3();
  if (name == "H5") return heisenberg_h5();
  throw std::invalid_argument("unknown group preset: " + name);
}

void validate(const GroupSpec& g) {
  if (g.m2 < 1) throw std::invalid_argument("group needs m2 >= 1");
  if (g.m1 < 2) throw std::invalid_argument("group needs m1 >= 2");
  if (g.dim() < 3) throw std::invalid_argument("group dimension must be at least 3");
  if (g.dim() > kMaxN)
    throw std::invalid_argument("group dimension exceeds supported maximum " +
                                std::to_string(kMaxN));
  for (const BetaEntry& e : g.beta) {
    if (e.i < 0 || e.i >= g.m1 || e.j < 0 || e.j >= g.m1 || e.k < 0 || e.k >= g.m2)
      throw std::invalid_argument("beta entry index out of range");
    if (e.i == e.j && e.value != 0)
      throw std::invalid_argument("diagonal beta entries are not supported");
  }
  // The unit commutator loops must generate the full weight-2 lattice,
  // otherwise some lattice points have no horizontal word.
  LoopLattice lat = loop_lattice(g);
  std::vector<int64_t> coeffs;
  for (int k = 0; k < g.m2; ++k) {
    std::vector<int64_t> e(g.m2, 0);
    e[k] = 1;
    if (!solve_loop_lattice(lat, g.m2, e, coeffs))
      throw std::invalid_argument("bracket form does not generate the weight-2 lattice");
  }
  weight_table(g);  // throws if no consistent k table exists
}

WeightTable weight_table(const GroupSpec& g) {
  WeightTable wt;
  wt.n = g.dim();
  for (int j = 0; j < g.m1; ++j) wt.axis_weights[j] = 1;
  for (int j = g.m1; j < wt.n; ++j) wt.axis_weights[j] = 2;
  wt.kappa = g.m1 + 2 * g.m2;

  wt.k[0] = 0;
  if (!g.k_override.empty()) {
    if (static_cast<int>(g.k_override.size()) != wt.n)
      throw std::invalid_argument("k table must list k(1)..k(n)");
    for (int d = 1; d <= wt.n; ++d) wt.k[d] = g.k_override[d - 1];
  } else if (g.m2 == 1 && g.m1 % 2 == 0) {
    // Heisenberg shape H_{2n+1}: k(d) = d up to n, d + 1 above.
    int half = g.m1 / 2;
    for (int d = 1; d <= wt.n; ++d) wt.k[d] = d <= half ? d : d + 1;
  } else {
    // Only the generic defaults are known; interior dimensions must be given.
    if (wt.n != 3)
      throw std::invalid_argument(
          "group is not Heisenberg-shaped: supply k(1)..k(n) explicitly");
    wt.k[1] = 1;
    wt.k[2] = wt.kappa - 1;
    wt.k[3] = wt.kappa;
  }

  if (wt.k[wt.n] != wt.kappa)
    throw std::invalid_argument("k(n) must equal the volume growth exponent");
  for (int d = 1; d <= wt.n; ++d) {
    if (wt.k[d] < d) throw std::invalid_argument("k(d) < d is not realizable");
    if (d > 1 && wt.k[d] < wt.k[d - 1])
      throw std::invalid_argument("k must be nondecreasing");
  }
  return wt;
}

Point identity(const GroupSpec& g) {
  Point p;
  p.n = g.dim();
  return p;
}

Point make_point(const GroupSpec& g, std::initializer_list<int64_t> coords) {
  if (static_cast<int>(coords.size()) != g.dim())
    throw std::invalid_argument("wrong coordinate count for group " + g.name);
  Point p = identity(g);
  int j = 0;
  for (int64_t c : coords) p.coords[j++] = c;
  return p;
}

Point mul(const GroupSpec& g, const Point& p, const Point& q) {
  check_same_group(g, p);
  check_same_group(g, q);
  Point r = identity(g);
  for (int j = 0; j < g.dim(); ++j) r.coords[j] = p.coords[j] + q.coords[j];
  beta_add(g, p.coords, q.coords, r.coords);
  return r;
}

Point inv(const GroupSpec& g, const Point& p) {
  check_same_group(g, p);
  Point r = identity(g);
  for (int j = 0; j < g.dim(); ++j) r.coords[j] = -p.coords[j];
  beta_add(g, p.coords, p.coords, r.coords);  // -x2 + beta(x1, x1)
  return r;
}

Point scale(const GroupSpec& g, int i, const Point& p) {
  check_same_group(g, p);
  if (i < 0) throw std::invalid_argument("scale exponent must be nonnegative");
  Point r = p;
  for (int j = 0; j < g.m1; ++j) r.coords[j] *= pow2(i);
  for (int j = g.m1; j < g.dim(); ++j) r.coords[j] *= pow2(2 * i);
  return r;
}

int64_t quasi_norm(const GroupSpec& g, const Point& p) {
  check_same_group(g, p);
  int64_t nrm = 0;
  for (int j = 0; j < g.m1; ++j) nrm = std::max(nrm, std::abs(p.coords[j]));
  for (int j = g.m1; j < g.dim(); ++j)
    nrm = std::max(nrm, isqrt_ceil(std::abs(p.coords[j])));
  return nrm;
}

Point step_point(const GroupSpec& g, const GeneratorStep& s) {
  if (s.axis < 0 || s.axis >= g.m1)
    throw std::invalid_argument("generator step must use a weight-1 axis");
  Point p = identity(g);
  p.coords[s.axis] = s.sign;
  return p;
}

Point apply_steps(const GroupSpec& g, Point base, std::span<const GeneratorStep> steps) {
  for (const GeneratorStep& s : steps) base = mul(g, base, step_point(g, s));
  return base;
}

std::vector<GeneratorStep> horizontal_path(const GroupSpec& g, const Point& p) {
  check_same_group(g, p);
  std::vector<GeneratorStep> steps;
  Point pos = identity(g);
  for (int a = 0; a < g.m1; ++a) {
    int64_t want = p.coords[a];
    int sign = want >= 0 ? +1 : -1;
    emit_run(steps, a, sign, std::abs(want));
  }
  pos = apply_steps(g, pos, steps);

  std::vector<int64_t> residual(g.m2, 0);
  bool closed = true;
  for (int k = 0; k < g.m2; ++k) {
    residual[k] = p.coords[g.m1 + k] - pos.coords[g.m1 + k];
    if (residual[k] != 0) closed = false;
  }
  if (closed) return steps;

  LoopLattice lat = loop_lattice(g);
  std::vector<int64_t> coeffs;
  if (!solve_loop_lattice(lat, g.m2, residual, coeffs))
    throw std::runtime_error("weight-2 residual not realizable; group validation missed");

  for (size_t pidx = 0; pidx < lat.pairs.size(); ++pidx) {
    int64_t c = coeffs[pidx];
    if (c == 0) continue;
    auto [a, b] = lat.pairs[pidx];
    if (c < 0) {
      std::swap(a, b);  // reversed orientation negates the enclosed bracket
      c = -c;
    }
    // c = s^2 + q*s + rem with q <= 2, rem < s: three rectangles of total
    // perimeter O(sqrt(c)).
    int64_t s = isqrt(c);
    int64_t d = c - s * s;
    int64_t q = d / s;
    int64_t rem = d % s;
    emit_rectangle(steps, a, b, s, s);
    if (q > 0) emit_rectangle(steps, a, b, s, q);
    if (rem > 0) emit_rectangle(steps, a, b, rem, 1);
  }
  return steps;
}

}  // namespace carnot
