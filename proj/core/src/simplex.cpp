#include "simplex.hpp"

#include <algorithm>

namespace carnot::lp {

namespace {

struct Tableau {
  int m = 0;          // constraint rows
  int n = 0;          // structural columns
  int width = 0;      // n + m artificials + 1 rhs
  std::vector<std::vector<Rational>> T;  // m rows + cost row
  std::vector<int> basis;                // basic column per row

  Rational& rhs(int r) { return T[r][width - 1]; }
  Rational& cost(int j) { return T[m][j]; }

  void pivot(int r, int s) {
    Rational piv = T[r][s];
    for (int j = 0; j < width; ++j) T[r][j] /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == r) continue;
      Rational f = T[i][s];
      if (f == 0) continue;
      for (int j = 0; j < width; ++j) {
        if (T[r][j] != 0) T[i][j] -= f * T[r][j];
      }
    }
    basis[r] = s;
  }

  // Rebuilds the reduced-cost row for the given objective coefficients.
  void load_costs(const std::vector<Rational>& c) {
    for (int j = 0; j < width; ++j) T[m][j] = 0;
    for (int j = 0; j < static_cast<int>(c.size()); ++j) T[m][j] = c[j];
    for (int r = 0; r < m; ++r) {
      int jb = basis[r];
      Rational cb = jb < static_cast<int>(c.size()) ? c[jb] : Rational(0);
      if (cb == 0) continue;
      for (int j = 0; j < width; ++j) {
        if (T[r][j] != 0) T[m][j] -= cb * T[r][j];
      }
    }
  }

  // Returns false on unboundedness. Columns with allow(j) false never enter.
  template <typename Allow>
  bool iterate(const Allow& allow) {
    constexpr int kStallLimit = 64;
    int stall = 0;
    bool bland = false;
    Rational last_obj = rhs(m);
    for (long iter = 0;; ++iter) {
      if (iter > 2000000) throw std::runtime_error("simplex iteration cap exceeded");
      int enter = -1;
      if (!bland) {
        const Rational* best = nullptr;
        for (int j = 0; j < width - 1; ++j) {
          if (!allow(j) || T[m][j] >= 0) continue;
          if (best == nullptr || T[m][j] < *best) {
            best = &T[m][j];
            enter = j;
          }
        }
      } else {
        for (int j = 0; j < width - 1; ++j) {
          if (allow(j) && T[m][j] < 0) {
            enter = j;
            break;
          }
        }
      }
      if (enter < 0) return true;  // optimal
      int leave = -1;
      Rational best_ratio;
      for (int r = 0; r < m; ++r) {
        if (T[r][enter] <= 0) continue;
        Rational ratio = rhs(r) / T[r][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
      if (!bland) {
        if (rhs(m) == last_obj) {
          if (++stall >= kStallLimit) bland = true;
        } else {
          stall = 0;
          last_obj = rhs(m);
        }
      }
    }
  }
};

}  // namespace

Result solve_min(int rows, int cols, const std::vector<Entry>& A,
                 const std::vector<Rational>& b, const std::vector<Rational>& c) {
  Tableau t;
  t.m = rows;
  t.n = cols;
  t.width = cols + rows + 1;
  t.T.assign(rows + 1, std::vector<Rational>(t.width, Rational(0)));
  t.basis.resize(rows);

  std::vector<int> row_sign(rows, 1);
  for (int r = 0; r < rows; ++r) {
    if (b[r] < 0) row_sign[r] = -1;
    t.rhs(r) = b[r] * row_sign[r];
  }
  for (const Entry& e : A) t.T[e.row][e.col] += e.value * row_sign[e.row];
  for (int r = 0; r < rows; ++r) {
    t.T[r][cols + r] = 1;  // artificial
    t.basis[r] = cols + r;
  }

  // Phase 1: drive the artificial sum to zero.
  std::vector<Rational> phase1_cost(cols + rows, Rational(0));
  for (int r = 0; r < rows; ++r) phase1_cost[cols + r] = 1;
  t.load_costs(phase1_cost);
  if (!t.iterate([](int) { return true; }))
    throw std::runtime_error("phase-1 objective unbounded");

  Result res;
  if (-t.rhs(rows) != 0) {  // cost row rhs holds -objective
    res.status = Status::kInfeasible;
    return res;
  }

  // Pivot out any artificial stuck in the basis at level zero.
  for (int r = 0; r < rows; ++r) {
    if (t.basis[r] < cols) continue;
    for (int j = 0; j < cols; ++j) {
      if (t.T[r][j] != 0) {
        t.pivot(r, j);
        break;
      }
    }
  }

  std::vector<Rational> phase2_cost(cols + rows, Rational(0));
  for (int j = 0; j < cols; ++j) phase2_cost[j] = c[j];
  t.load_costs(phase2_cost);
  auto structural = [cols](int j) { return j < cols; };
  if (!t.iterate(structural)) {
    res.status = Status::kUnbounded;
    return res;
  }

  res.status = Status::kOptimal;
  res.x.assign(cols, Rational(0));
  for (int r = 0; r < rows; ++r) {
    if (t.basis[r] < cols) res.x[t.basis[r]] = t.rhs(r);
  }
  res.value = 0;
  for (int j = 0; j < cols; ++j) res.value += c[j] * res.x[j];

  // y' = c_B' B^{-1}; the artificial block of the tableau carries B^{-1}.
  res.dual.assign(rows, Rational(0));
  for (int i = 0; i < rows; ++i) {
    Rational y;
    for (int r = 0; r < rows; ++r) {
      int jb = t.basis[r];
      if (jb < cols && c[jb] != 0 && t.T[r][cols + i] != 0) y += c[jb] * t.T[r][cols + i];
    }
    res.dual[i] = y * row_sign[i];
  }
  return res;
}

}  // namespace carnot::lp
