#include "carnot/chain.hpp"

#include <algorithm>
#include <random>

namespace carnot {

namespace {

constexpr size_t kCompactThreshold = 1u << 21;

void check_scale_dim(const Chain& c, const GridCell& cell) {
  if (cell.scale != c.scale || cell.dim() != c.dim)
    throw std::invalid_argument("cell scale/dimension does not match chain");
}

void sort_fold(std::vector<std::pair<GridCell, int64_t>>& buf) {
  std::sort(buf.begin(), buf.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  size_t out = 0;
  for (size_t i = 0; i < buf.size();) {
    GridCell cell = buf[i].first;
    int64_t acc = 0;
    while (i < buf.size() && buf[i].first == cell) acc += buf[i++].second;
    if (acc != 0) buf[out++] = {cell, acc};
  }
  buf.resize(out);
}

}  // namespace

Grid make_grid(const WeightTable& wt) {
  Grid g;
  g.n = wt.n;
  g.w = wt.axis_weights;
  g.k = wt.k;
  g.kappa = wt.kappa;
  return g;
}

Grid make_grid(const GroupSpec& spec) { return make_grid(weight_table(spec)); }

void ChainBuilder::add(const GridCell& cell, int64_t coeff) {
  if (coeff == 0) return;
  buf_.emplace_back(cell, coeff);
  if (buf_.size() >= kCompactThreshold) compact();
}

void ChainBuilder::compact() { sort_fold(buf_); }

Chain ChainBuilder::take() {
  sort_fold(buf_);
  Chain c;
  c.scale = scale_;
  c.dim = dim_;
  for (auto& [cell, coeff] : buf_) {
    check_scale_dim(c, cell);
    c.cells.emplace_hint(c.cells.end(), cell, coeff);
  }
  buf_.clear();
  return c;
}

GridCell make_cell(int32_t scale, std::initializer_list<int> axes,
                   std::initializer_list<int64_t> corner) {
  GridCell cell;
  cell.scale = scale;
  for (int a : axes) {
    if (a < 0 || a >= kMaxN) throw std::invalid_argument("axis out of range");
    cell.axes |= 1u << a;
  }
  int j = 0;
  for (int64_t v : corner) {
    if (j >= kMaxN) throw std::invalid_argument("too many corner coordinates");
    cell.corner[j++] = v;
  }
  return cell;
}

Chain single_cell(const GridCell& cell, int64_t coeff) {
  Chain c;
  c.scale = cell.scale;
  c.dim = cell.dim();
  if (coeff != 0) c.cells.emplace(cell, coeff);
  return c;
}

int64_t l1(const Chain& c) {
  int64_t s = 0;
  for (auto& [cell, coeff] : c.cells) s += std::abs(coeff);
  return s;
}

int64_t cell_mass_weight(const Grid& g, int scale, int dim) {
  if (dim < 0 || dim > g.n) throw std::invalid_argument("dimension out of range");
  return pow2(scale * g.k[dim]);
}

int64_t mass(const Grid& g, const Chain& c) {
  return l1(c) * cell_mass_weight(g, c.scale, c.dim);
}

Chain add(const Chain& a, const Chain& b) {
  if (a.zero()) return b;
  if (b.zero()) return a;
  if (a.scale != b.scale || a.dim != b.dim)
    throw std::invalid_argument("chain sum requires equal scale and dimension");
  Chain r = a;
  for (auto& [cell, coeff] : b.cells) {
    auto [it, inserted] = r.cells.emplace(cell, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) r.cells.erase(it);
    }
  }
  return r;
}

Chain negate(Chain c) {
  for (auto& [cell, coeff] : c.cells) coeff = -coeff;
  return c;
}

Chain translate(const Chain& c, const Vec& delta) {
  Chain r;
  r.scale = c.scale;
  r.dim = c.dim;
  for (auto& [cell, coeff] : c.cells) {
    GridCell moved = cell;
    for (int j = 0; j < kMaxN; ++j) moved.corner[j] += delta[j];
    r.cells.emplace_hint(r.cells.end(), moved, coeff);
  }
  return r;
}

Chain boundary(const Chain& c) {
  if (c.dim < 1) throw std::invalid_argument("boundary needs dimension >= 1");
  ChainBuilder out(c.scale, c.dim - 1);
  for (auto& [cell, coeff] : c.cells) {
    int pos = 0;
    for (int j = 0; j < kMaxN; ++j) {
      if (!cell.spans(j)) continue;
      ++pos;
      int64_t sign = (pos % 2 == 1) ? 1 : -1;
      GridCell face = cell;
      face.axes &= ~(1u << j);
      out.add(face, -sign * coeff);  // lower face
      face.corner[j] += 1;
      out.add(face, sign * coeff);  // upper face
    }
  }
  return out.take();
}

Chain subdivide(const Grid& g, const Chain& c) { return subdivide(g, c, Vec{}); }

Chain subdivide(const Grid& g, const Chain& c, const Vec& fine_offset) {
  if (c.scale < 1) throw std::invalid_argument("subdivide needs scale >= 1");
  ChainBuilder out(c.scale - 1, c.dim);
  std::vector<int> span_axes;
  for (auto& [cell, coeff] : c.cells) {
    GridCell base;
    base.scale = c.scale - 1;
    base.axes = cell.axes;
    for (int j = 0; j < g.n; ++j) base.corner[j] = cell.corner[j] * g.ratio(j) + fine_offset[j];
    span_axes.clear();
    for (int j = 0; j < g.n; ++j)
      if (cell.spans(j)) span_axes.push_back(j);
    // Odometer over the child offsets along spanned axes.
    std::vector<int64_t> idx(span_axes.size(), 0);
    for (;;) {
      GridCell child = base;
      for (size_t t = 0; t < span_axes.size(); ++t) child.corner[span_axes[t]] += idx[t];
      out.add(child, coeff);
      size_t t = 0;
      for (; t < span_axes.size(); ++t) {
        if (++idx[t] < g.ratio(span_axes[t])) break;
        idx[t] = 0;
      }
      if (t == span_axes.size()) break;
    }
  }
  return out.take();
}

bool is_cycle(const Chain& c) {
  if (c.dim == 0) return false;
  return boundary(c).zero();
}

Chain sphere_cycle(const Grid& g, int64_t r) {
  if (r < 1) throw std::invalid_argument("sphere radius must be >= 1");
  std::array<int64_t, kMaxN> extent{};
  for (int j = 0; j < g.n; ++j) {
    extent[j] = 1;
    for (int t = 0; t < g.w[j]; ++t) extent[j] *= r;
  }
  ChainBuilder out(0, g.n - 1);
  for (int j = 0; j < g.n; ++j) {
    // Outer faces normal to axis j; interior faces of the solid box cancel.
    int64_t sign = (j % 2 == 0) ? 1 : -1;
    uint32_t axes = 0;
    for (int t = 0; t < g.n; ++t)
      if (t != j) axes |= 1u << t;
    std::vector<int64_t> idx(g.n, 0);
    for (;;) {
      GridCell cell;
      cell.scale = 0;
      cell.axes = axes;
      for (int t = 0; t < g.n; ++t) cell.corner[t] = idx[t];
      cell.corner[j] = 0;
      out.add(cell, -sign);
      cell.corner[j] = extent[j];
      out.add(cell, sign);
      int t = 0;
      for (; t < g.n; ++t) {
        if (t == j) continue;
        if (++idx[t] < extent[t]) break;
        idx[t] = 0;
      }
      if (t == g.n) break;
    }
  }
  return out.take();
}

Chain commutator_loop(const Grid& g, int64_t r) {
  if (r < 1) throw std::invalid_argument("loop size must be >= 1");
  int zaxis = -1;
  for (int j = 0; j < g.n; ++j)
    if (g.w[j] == 2) {
      zaxis = j;
      break;
    }
  if (zaxis < 2) throw std::invalid_argument("loop needs two weight-1 axes and one weight-2 axis");
  ChainBuilder out(0, 1);
  auto run = [&](int axis, Vec at, int64_t from, int64_t to, int64_t sign) {
    GridCell cell;
    cell.scale = 0;
    cell.axes = 1u << axis;
    cell.corner = at;
    for (int64_t v = from; v < to; ++v) {
      cell.corner[axis] = v;
      out.add(cell, sign);
    }
  };
  Vec at{};
  run(0, at, 0, r, +1);                            // x: 0 -> r at (0, 0)
  at[0] = r;
  run(1, at, 0, r, +1);                            // y: 0 -> r at (r, 0)
  at[1] = r;
  run(zaxis, at, 0, r, +1);                        // z: 0 -> r at (r, r)
  at[zaxis] = r;
  run(0, at, 0, r, -1);                            // x: r -> 0 at (r, r)
  at[0] = 0;
  run(1, at, 0, r, -1);                            // y: r -> 0 at (0, r)
  at[1] = 0;
  run(zaxis, at, 0, r, -1);                        // z: r -> 0 at (0, 0)
  return out.take();
}

Chain random_cycle(const Grid& g, int dim, int64_t extent, uint64_t seed) {
  if (dim < 1 || dim >= g.n) throw std::invalid_argument("cycle dimension must be in [1, n)");
  if (extent < 0) throw std::invalid_argument("negative box extent");
  Chain filler;
  filler.scale = 0;
  filler.dim = dim + 1;
  if (extent == 0) {
    Chain z;
    z.dim = dim;
    return z;
  }
  // All (dim+1)-subsets of the axes, fixed order.
  std::vector<uint32_t> masks;
  for (uint32_t m = 0; m < (1u << g.n); ++m)
    if (std::popcount(m) == dim + 1) masks.push_back(m);
  std::mt19937_64 rng(seed);
  ChainBuilder b(0, dim + 1);
  int64_t count = std::max<int64_t>(1, extent) * (dim + 2);
  for (int64_t i = 0; i < count; ++i) {
    GridCell cell;
    cell.scale = 0;
    cell.axes = masks[rng() % masks.size()];
    for (int j = 0; j < g.n; ++j) cell.corner[j] = static_cast<int64_t>(rng() % extent);
    int64_t coeff = 1 + static_cast<int64_t>(rng() % 3);
    if (rng() % 2) coeff = -coeff;
    b.add(cell, coeff);
  }
  filler = b.take();
  if (filler.zero()) {
    Chain z;
    z.dim = dim;
    return z;
  }
  return boundary(filler);
}

}  // namespace carnot
