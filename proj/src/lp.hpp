// Exact linear programming over the rationals: maximize c^T x subject to
// sparse rows (<=, =, >=) and x >= 0, by two-phase dense-tableau simplex
// with Bland's anti-cycling pivot rule.  Optimal solves return the exact
// optimum, a primal witness and a dual certificate of the matching upper
// bound; infeasible solves return a Farkas-style certificate.
#pragma once

#include <vector>

#include "rational.hpp"

namespace parrep {

enum class RelOp { LE, EQ, GE };

struct LinRow {
  std::vector<std::pair<int, Rat>> terms;  // (variable, coefficient)
  RelOp op = RelOp::EQ;
  Rat rhs;
};

struct LinearProgram {
  int num_vars = 0;
  std::vector<LinRow> rows;
  std::vector<Rat> objective;  // size num_vars, maximized
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  Rat optimum;
  std::vector<Rat> primal;  // size num_vars
  // Dual values per original row.  At optimality: y^T b = optimum,
  // y^T A >= c componentwise, y_i >= 0 for <= rows and y_i <= 0 for >= rows.
  // When infeasible: y^T A >= 0, y^T b < 0 with the same sign conditions.
  std::vector<Rat> dual;
  std::vector<Rat> ray;  // improving direction when unbounded
  uint64_t pivots = 0;
};

LpResult simplex_solve(const LinearProgram& lp);

// exact checks used by callers and tests
bool primal_feasible(const LinearProgram& lp, const std::vector<Rat>& x);
bool dual_certifies(const LinearProgram& lp, const std::vector<Rat>& y, const Rat& optimum);

}  // namespace parrep
