#include "carnot/coarsen.hpp"

namespace carnot {

std::vector<Offset> all_offsets(const Grid& g) {
  std::vector<Offset> out;
  Offset o;
  for (;;) {
    out.push_back(o);
    int j = g.n - 1;
    for (; j >= 0; --j) {
      if (++o.o[j] < g.ratio(j)) break;
      o.o[j] = 0;
    }
    if (j < 0) break;
  }
  return out;
}

Vec offset_vec(const Offset& o) {
  Vec v{};
  for (int j = 0; j < kMaxN; ++j) v[j] = o.o[j];
  return v;
}

DualCell dual_cell(const Grid& g, const GridCell& coarse, const Offset& o) {
  DualCell d;
  d.n = g.n;
  d.cell_axes = coarse.axes;
  for (int j = 0; j < g.n; ++j) {
    int64_t L = g.ratio(j);
    int64_t H = L / 2;
    int64_t base = coarse.corner[j] * L + o.o[j];
    if (coarse.spans(j)) {
      d.center[j] = base + H;
    } else {
      d.lo[j] = base - H;
      d.hi[j] = base + H;
    }
  }
  return d;
}

int64_t intersection_number(const Grid& g, const Chain& fine, const DualCell& dual) {
  int dual_dim = g.n - std::popcount(dual.cell_axes);
  if (fine.dim + dual_dim != g.n)
    throw std::invalid_argument("intersection needs complementary dimensions");
  int64_t total = 0;
  for (auto& [cell, coeff] : fine.cells) {
    if (cell.axes != dual.cell_axes) continue;  // non-transverse axis types
    bool crosses = true;
    for (int j = 0; j < g.n && crosses; ++j) {
      if (cell.spans(j)) {
        // The dual's center plane must lie in the cell's half-open span.
        crosses = dual.center[j] >= cell.corner[j] && dual.center[j] < cell.corner[j] + 1;
      } else {
        crosses = cell.corner[j] >= dual.lo[j] && cell.corner[j] < dual.hi[j];
      }
    }
    if (crosses) total += coeff;
  }
  return total;
}

Chain coarsen(const Grid& g, const Chain& c, const Offset& o) {
  ChainBuilder out(c.scale + 1, c.dim);
  for (auto& [cell, coeff] : c.cells) {
    GridCell up;
    up.scale = c.scale + 1;
    up.axes = cell.axes;
    bool hit = true;
    for (int j = 0; j < g.n && hit; ++j) {
      int64_t L = g.ratio(j);
      int64_t H = L / 2;
      int64_t u = cell.corner[j] - o.o[j];
      if (cell.spans(j)) {
        // Crossing requires the dual center on this axis to equal the corner.
        hit = floor_mod(u - H, L) == 0;
        up.corner[j] = floor_div(u - H, L);
      } else {
        up.corner[j] = floor_div(u + H, L);
      }
    }
    if (hit) out.add(up, coeff);
  }
  return out.take();
}

Rational offset_l1_average(const Grid& g, const Chain& c) {
  BigInt total = 0;
  int64_t count = 0;
  for (const Offset& o : all_offsets(g)) {
    total += l1(coarsen(g, c, o));
    ++count;
  }
  return Rational(total, count);
}

std::pair<Offset, Chain> best_offset(const Grid& g, const Chain& c) {
  std::pair<Offset, Chain> best;
  int64_t best_l1 = -1;
  for (const Offset& o : all_offsets(g)) {
    Chain up = coarsen(g, c, o);
    int64_t v = l1(up);
    if (best_l1 < 0 || v < best_l1) {
      best_l1 = v;
      best = {o, std::move(up)};
    }
  }
  return best;
}

}  // namespace carnot
