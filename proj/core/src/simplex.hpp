#pragma once

#include <vector>

#include "carnot/numeric.hpp"

namespace carnot::lp {

struct Entry {
  int row = 0;
  int col = 0;
  Rational value;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kInfeasible;
  Rational value;
  std::vector<Rational> x;     // primal solution, length = #cols
  std::vector<Rational> dual;  // simplex multipliers, length = #rows
};

// Exact two-phase primal simplex for min c'x s.t. Ax = b, x >= 0.
// Dantzig pricing with a Bland fallback against cycling. The duals satisfy
// y'A <= c' componentwise and y'b equals the optimum at termination.
Result solve_min(int rows, int cols, const std::vector<Entry>& A,
                 const std::vector<Rational>& b, const std::vector<Rational>& c);

}  // namespace carnot::lp
