#include "carnot/homotopy.hpp"

namespace carnot {

namespace {

Offset zero_offset() { return Offset{}; }

// Lowest spanned axis, or n when the cell is a vertex.
int min_axis(const GridCell& cell, int n) {
  for (int j = 0; j < n; ++j)
    if (cell.spans(j)) return j;
  return n;
}

// Per-cell prism terms of the contraction: for each free axis a below every
// spanned axis, sweep the cell to the box's lower wall along a, projecting
// the axes below a onto the wall first.
void emit_contraction(const Grid& g, const GridCell& cell, int64_t coeff,
                      const CarrierBox& B, ChainBuilder& out) {
  int stop = min_axis(cell, g.n);
  for (int a = 0; a < stop; ++a) {
    GridCell prism = cell;
    prism.axes |= 1u << a;
    for (int b = 0; b < a; ++b) prism.corner[b] = B.lo[b];
    for (int64_t y = B.lo[a]; y < cell.corner[a]; ++y) {
      prism.corner[a] = y;
      out.add(prism, coeff);
    }
  }
}

struct QContext {
  const Grid& grid;
  std::map<GridCell, Chain> memo;
};

const Chain& q_cell(QContext& ctx, const GridCell& cell);

Chain q_of_chain(QContext& ctx, const Chain& c) {
  ChainBuilder out(c.scale, c.dim + 1);
  for (auto& [cell, coeff] : c.cells) {
    const Chain& q = q_cell(ctx, cell);
    for (auto& [qc, qv] : q.cells) out.add(qc, qv * coeff);
  }
  return out.take();
}

const Chain& q_cell(QContext& ctx, const GridCell& cell) {
  auto it = ctx.memo.find(cell);
  if (it != ctx.memo.end()) return it->second;
  const Grid& g = ctx.grid;
  Chain q;
  if (cell.dim() == 0) {
    // Monotone lattice path from the vertex to the coarse vertex whose dual
    // box contains it, one axis at a time.
    ChainBuilder path(cell.scale, 1);
    Vec cur = cell.corner;
    for (int j = 0; j < g.n; ++j) {
      int64_t L = g.ratio(j);
      int64_t target = floor_div(cell.corner[j] + L / 2, L) * L;
      GridCell edge;
      edge.scale = cell.scale;
      edge.axes = 1u << j;
      edge.corner = cur;
      while (cur[j] < target) {
        edge.corner[j] = cur[j];
        path.add(edge, +1);
        ++cur[j];
      }
      while (cur[j] > target) {
        --cur[j];
        edge.corner[j] = cur[j];
        path.add(edge, -1);
      }
    }
    q = path.take();
  } else {
    Chain self = single_cell(cell);
    Chain approx = subdivide(g, coarsen(g, self, zero_offset()));
    Chain defect = add(add(approx, negate(self)), negate(q_of_chain(ctx, boundary(self))));
    q = contract_box(g, defect, carrier_box(g, cell));
  }
  return ctx.memo.emplace(cell, std::move(q)).first->second;
}

}  // namespace

bool CarrierBox::contains(const GridCell& cell) const {
  for (int j = 0; j < n; ++j) {
    int64_t upper = cell.corner[j] + (cell.spans(j) ? 1 : 0);
    if (cell.corner[j] < lo[j] || upper > hi[j]) return false;
  }
  return true;
}

CarrierBox carrier_box(const Grid& g, const GridCell& fine) {
  CarrierBox B;
  B.n = g.n;
  for (int j = 0; j < g.n; ++j) {
    int64_t L = g.ratio(j);
    if (!fine.spans(j) && floor_mod(fine.corner[j], L) == 0) {
      B.lo[j] = B.hi[j] = fine.corner[j];  // sits on a coarse wall
    } else {
      int64_t c = floor_div(fine.corner[j], L);
      B.lo[j] = c * L;
      B.hi[j] = (c + 1) * L;
    }
  }
  return B;
}

Chain contract_box(const Grid& g, const Chain& z, const CarrierBox& B) {
  Chain result;
  result.scale = z.scale;
  result.dim = z.dim + 1;
  if (z.zero()) return result;
  if (z.dim >= g.n)
    throw std::runtime_error("nonzero top-dimensional cycle in a box");
  for (auto& [cell, coeff] : z.cells) {
    if (!B.contains(cell)) throw std::invalid_argument("cycle support escapes the box");
  }
  if (z.dim == 0) {
    int64_t total = 0;
    for (auto& [cell, coeff] : z.cells) total += coeff;
    if (total != 0) throw std::invalid_argument("0-chain with nonzero degree is not contractible");
  } else if (!is_cycle(z)) {
    throw std::invalid_argument("contract_box needs a cycle");
  }
  ChainBuilder out(z.scale, z.dim + 1);
  for (auto& [cell, coeff] : z.cells) emit_contraction(g, cell, coeff, B, out);
  return out.take();
}

Chain cell_homotopy(const Grid& g, const GridCell& fine) {
  QContext ctx{g, {}};
  return q_cell(ctx, fine);
}

HomotopyStep chain_homotopy_Q(const Grid& g, const Chain& alpha, const Offset& o) {
  if (alpha.dim < 1 || alpha.dim >= g.n)
    throw std::invalid_argument("homotopy needs cycle dimension in [1, n)");
  if (!is_cycle(alpha)) throw std::invalid_argument("homotopy input is not a cycle");

  HomotopyStep step;
  step.offset = o;
  step.alpha_next = coarsen(g, alpha, o);

  Vec shift = offset_vec(o);
  Vec neg_shift{};
  for (int j = 0; j < kMaxN; ++j) neg_shift[j] = -shift[j];
  Chain shifted = translate(alpha, neg_shift);

  // Per top cell, a fresh memo keeps memory bounded on large inputs; faces
  // shared between neighbouring cells are recomputed instead of cached.
  ChainBuilder out(alpha.scale, alpha.dim + 1);
  for (auto& [cell, coeff] : shifted.cells) {
    QContext ctx{g, {}};
    const Chain& q = q_cell(ctx, cell);
    for (auto& [qc, qv] : q.cells) out.add(qc, qv * coeff);
  }
  step.bridge = translate(out.take(), shift);
  step.bridge_mass = mass(g, step.bridge);
  return step;
}

}  // namespace carnot
