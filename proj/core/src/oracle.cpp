#include "carnot/oracle.hpp"

#include <algorithm>
#include <functional>

#include "simplex.hpp"

namespace carnot {

namespace {

bool cell_in_box(const Grid& g, const WindowBox& box, const GridCell& cell) {
  for (int j = 0; j < g.n; ++j) {
    int64_t upper = cell.corner[j] + (cell.spans(j) ? 1 : 0);
    if (cell.corner[j] < box.lo[j] || upper > box.hi[j]) return false;
  }
  return true;
}

void check_supported(const WindowComplex& w, const Chain& zeta) {
  for (auto& [cell, coeff] : zeta.cells) {
    if (cell.scale != 0) throw std::invalid_argument("window chains live at scale 0");
    if (!w.contains(cell)) throw std::invalid_argument("chain not supported in the window");
  }
}

std::vector<uint32_t> axis_masks(int n, int dim) {
  std::vector<uint32_t> masks;
  for (uint32_t m = 0; m < (1u << n); ++m)
    if (std::popcount(m) == dim) masks.push_back(m);
  return masks;
}

}  // namespace

WindowBox bounding_window(const Grid& g, const Chain& c, int64_t margin) {
  WindowBox box;
  bool first = true;
  for (auto& [cell, coeff] : c.cells) {
    for (int j = 0; j < g.n; ++j) {
      int64_t lo = cell.corner[j];
      int64_t hi = cell.corner[j] + (cell.spans(j) ? 1 : 0);
      if (first) {
        box.lo[j] = lo;
        box.hi[j] = hi;
      } else {
        box.lo[j] = std::min(box.lo[j], lo);
        box.hi[j] = std::max(box.hi[j], hi);
      }
    }
    first = false;
  }
  for (int j = 0; j < g.n; ++j) {
    box.lo[j] -= margin;
    box.hi[j] += margin;
  }
  return box;
}

WindowComplex make_window(const Grid& g, const WindowBox& box) {
  for (int j = 0; j < g.n; ++j) {
    if (box.hi[j] < box.lo[j]) throw std::invalid_argument("empty window box");
  }
  return WindowComplex{g, box};
}

bool WindowComplex::contains(const GridCell& cell) const {
  return cell_in_box(grid, box, cell);
}

std::vector<GridCell> WindowComplex::cells(int dim) const {
  std::vector<GridCell> out;
  for (uint32_t mask : axis_masks(grid.n, dim)) {
    GridCell cell;
    cell.scale = 0;
    cell.axes = mask;
    std::array<int64_t, kMaxN> hi{};
    for (int j = 0; j < grid.n; ++j) {
      cell.corner[j] = box.lo[j];
      hi[j] = box.hi[j] - (cell.spans(j) ? 1 : 0);
      if (hi[j] < box.lo[j]) {
        cell.axes = 0;  // window too thin for this mask
        break;
      }
    }
    if (cell.axes != mask) continue;
    for (;;) {
      out.push_back(cell);
      int j = grid.n - 1;
      for (; j >= 0; --j) {
        if (++cell.corner[j] <= hi[j]) break;
        cell.corner[j] = box.lo[j];
      }
      if (j < 0) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int64_t WindowComplex::cell_count(int dim) const {
  int64_t total = 0;
  for (uint32_t mask : axis_masks(grid.n, dim)) {
    int64_t prod = 1;
    for (int j = 0; j < grid.n && prod > 0; ++j) {
      bool spans = (mask >> j) & 1u;
      int64_t len = box.hi[j] - box.lo[j] + (spans ? 0 : 1);
      prod = len > 0 ? prod * len : 0;
    }
    total += prod;
  }
  return total;
}

std::vector<MatrixEntry> boundary_matrix(const WindowComplex& w, int dim) {
  if (dim < 1 || dim > w.grid.n) throw std::invalid_argument("boundary matrix dimension");
  std::vector<GridCell> rows = w.cells(dim - 1);
  std::vector<GridCell> cols = w.cells(dim);
  std::map<GridCell, int64_t> row_index;
  for (size_t i = 0; i < rows.size(); ++i) row_index.emplace(rows[i], i);
  std::vector<MatrixEntry> entries;
  for (size_t c = 0; c < cols.size(); ++c) {
    Chain bd = boundary(single_cell(cols[c]));
    for (auto& [face, coeff] : bd.cells) {
      entries.push_back({row_index.at(face), static_cast<int64_t>(c), coeff});
    }
  }
  return entries;
}

LpFilling minimal_filling_lp(const WindowComplex& w, const Chain& zeta, const LpOptions& opt) {
  const Grid& g = w.grid;
  if (!zeta.zero() && zeta.dim >= g.n)
    throw std::invalid_argument("filling dimension must stay below the ambient dimension");
  check_supported(w, zeta);
  if (!zeta.zero() && !is_cycle(zeta)) throw std::invalid_argument("input is not a cycle");

  LpFilling out;
  out.lower_bound = 0;
  if (zeta.zero()) {
    out.filling = Chain{0, static_cast<int32_t>(zeta.dim + 1), {}};
    out.dual_certified = true;
    return out;
  }

  std::vector<GridCell> rows = w.cells(zeta.dim);
  std::vector<GridCell> cols = w.cells(zeta.dim + 1);
  if (2 * static_cast<int64_t>(cols.size()) > opt.max_variables)
    throw std::runtime_error("window exceeds the LP variable cap");

  std::map<GridCell, int64_t> row_index;
  for (size_t i = 0; i < rows.size(); ++i) row_index.emplace(rows[i], i);

  const int m = static_cast<int>(rows.size());
  const int nvars = 2 * static_cast<int>(cols.size());  // split b = p - q
  std::vector<lp::Entry> A;
  for (size_t c = 0; c < cols.size(); ++c) {
    Chain bd = boundary(single_cell(cols[c]));
    for (auto& [face, coeff] : bd.cells) {
      int64_t r = row_index.at(face);
      A.push_back({static_cast<int>(r), static_cast<int>(2 * c), Rational(coeff)});
      A.push_back({static_cast<int>(r), static_cast<int>(2 * c + 1), Rational(-coeff)});
    }
  }
  std::vector<Rational> b(m, Rational(0));
  for (auto& [cell, coeff] : zeta.cells) b[row_index.at(cell)] = coeff;
  std::vector<Rational> cost(nvars, Rational(1));

  // Solves the node LP with optional single-variable bound rows appended.
  struct Bound {
    int var;
    Rational value;
    bool upper;
  };
  auto solve_node = [&](const std::vector<Bound>& bounds) {
    int extra = static_cast<int>(bounds.size());
    std::vector<lp::Entry> An = A;
    std::vector<Rational> bn = b;
    std::vector<Rational> cn = cost;
    int total_vars = nvars + extra;
    cn.resize(total_vars, Rational(0));
    for (int t = 0; t < extra; ++t) {
      int row = m + t;
      An.push_back({row, bounds[t].var, Rational(1)});
      An.push_back({row, nvars + t, bounds[t].upper ? Rational(1) : Rational(-1)});
      bn.push_back(bounds[t].value);
    }
    return lp::solve_min(m + extra, total_vars, An, bn, cn);
  };

  lp::Result root = solve_node({});
  if (root.status != lp::Status::kOptimal)
    throw std::runtime_error("cycle has no filling in the window");
  out.lower_bound = root.value;

  // Exact dual certificate: A'y <= c componentwise and y'b = value.
  {
    std::vector<Rational> slack(cost);
    for (const lp::Entry& e : A) slack[e.col] -= root.dual[e.row] * e.value;
    bool ok = std::all_of(slack.begin(), slack.end(),
                          [](const Rational& s) { return s >= 0; });
    Rational yb = 0;
    for (int r = 0; r < m; ++r) yb += root.dual[r] * b[r];
    ok = ok && yb == root.value;
    if (!ok) throw std::runtime_error("dual certificate validation failed");
    out.dual_certified = true;
  }

  auto extract_integral = [&](const std::vector<Rational>& x) -> std::optional<Chain> {
    ChainBuilder fb(0, zeta.dim + 1);
    for (size_t c = 0; c < cols.size(); ++c) {
      Rational v = x[2 * c] - x[2 * c + 1];
      if (denominator(v) != 1) return std::nullopt;
      int64_t iv = numerator(v).convert_to<int64_t>();
      if (iv != 0) fb.add(cols[c], iv);
    }
    Chain fill = fb.take();
    if (boundary(fill) != zeta) throw std::runtime_error("filling certificate failed");
    return fill;
  };

  if (auto fill = extract_integral(root.x)) {
    out.filling = std::move(fill);
    return out;
  }

  // Branch and bound on fractional variables; depth-limited, best-first by
  // recursion with incumbent pruning.
  std::optional<Chain> incumbent;
  Rational incumbent_value;
  int nodes = 0;
  std::function<void(std::vector<Bound>&)> branch = [&](std::vector<Bound>& bounds) {
    if (++nodes > opt.max_bb_nodes) return;
    lp::Result res = solve_node(bounds);
    if (res.status != lp::Status::kOptimal) return;
    if (incumbent && res.value >= incumbent_value) return;
    int frac = -1;
    for (int j = 0; j < nvars; ++j) {
      if (denominator(res.x[j]) != 1) {
        frac = j;
        break;
      }
    }
    if (frac < 0) {
      std::vector<Rational> x(res.x.begin(), res.x.begin() + nvars);
      if (auto fill = extract_integral(x)) {
        incumbent = std::move(fill);
        incumbent_value = res.value;
      }
      return;
    }
    Rational v = res.x[frac];
    BigInt fl = numerator(v) / denominator(v);
    bounds.push_back({frac, Rational(fl), true});
    branch(bounds);
    bounds.pop_back();
    bounds.push_back({frac, Rational(fl + 1), false});
    branch(bounds);
    bounds.pop_back();
  };
  std::vector<Bound> bounds;
  branch(bounds);
  out.filling = std::move(incumbent);
  return out;
}

Chain unique_top_filling(const WindowComplex& w, const Chain& zeta) {
  const Grid& g = w.grid;
  if (!zeta.zero() && zeta.dim != g.n - 1)
    throw std::invalid_argument("top filling needs a cycle of dimension n-1");
  check_supported(w, zeta);
  if (!zeta.zero() && !is_cycle(zeta)) throw std::invalid_argument("input is not a cycle");

  // Sweep along axis 0: the face between consecutive top cells determines
  // each coefficient from its left neighbour, starting from zero outside.
  uint32_t face_axes = 0;
  for (int j = 1; j < g.n; ++j) face_axes |= 1u << j;
  ChainBuilder fb(0, g.n);
  GridCell cell;
  cell.scale = 0;
  for (int j = 0; j < g.n; ++j) cell.axes |= 1u << j;
  std::array<int64_t, kMaxN> hi{};
  for (int j = 0; j < g.n; ++j) {
    cell.corner[j] = w.box.lo[j];
    hi[j] = w.box.hi[j] - 1;
    if (hi[j] < w.box.lo[j]) return fb.take();
  }
  GridCell face;
  face.scale = 0;
  face.axes = face_axes;
  for (;;) {
    // One run in the axis-0 direction.
    int64_t prev = 0;
    for (int64_t x0 = w.box.lo[0]; x0 <= hi[0]; ++x0) {
      cell.corner[0] = x0;
      face.corner = cell.corner;
      int64_t v = prev - zeta.coeff(face);
      if (v != 0) fb.add(cell, v);
      prev = v;
    }
    int j = g.n - 1;
    for (; j >= 1; --j) {
      if (++cell.corner[j] <= hi[j]) break;
      cell.corner[j] = w.box.lo[j];
    }
    if (j < 1) break;
  }
  Chain fill = fb.take();
  if (boundary(fill) != zeta)
    throw std::runtime_error("cycle is not nullhomologous in the window");
  return fill;
}

int64_t translate_intersection_sum(const Grid& g, const Chain& a, const Chain& b,
                                   const WindowBox& window) {
  if (a.dim + b.dim != g.n)
    throw std::invalid_argument("translation sum needs complementary dimensions");
  if (a.zero() || b.zero()) return 0;
  WindowBox abox = bounding_window(g, a);
  // For each complementary-axes cell pair there is exactly one crossing
  // translate, g = corner(b) - corner(a); accumulate signed products per g.
  std::map<Vec, int64_t> per_translate;
  uint32_t full = (1u << g.n) - 1;
  for (auto& [ca, va] : a.cells) {
    uint32_t want = full & ~ca.axes;
    for (auto& [cb, vb] : b.cells) {
      if (cb.axes != want) continue;
      Vec shift{};
      for (int j = 0; j < g.n; ++j) shift[j] = cb.corner[j] - ca.corner[j];
      bool meets = true;
      for (int j = 0; j < g.n && meets; ++j) {
        int64_t lo = abox.lo[j] + shift[j];
        int64_t hi = abox.hi[j] + shift[j];
        meets = hi >= window.lo[j] && lo <= window.hi[j];
      }
      if (meets) per_translate[shift] += va * vb;
    }
  }
  int64_t total = 0;
  for (auto& [shift, v] : per_translate) total += std::abs(v);
  return total;
}

}  // namespace carnot
