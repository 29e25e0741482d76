#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lp.hpp"

using namespace parrep;

namespace {

LinRow row(std::vector<std::pair<int, Rat>> terms, RelOp op, Rat rhs) {
  LinRow r;
  r.terms = std::move(terms);
  r.op = op;
  r.rhs = rhs;
  return r;
}

}  // namespace

TEST_CASE("max x subject to x <= 1/3") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {Rat(1)};
  lp.rows.push_back(row({{0, Rat(1)}}, RelOp::LE, Rat(1, 3)));
  LpResult r = simplex_solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.optimum == Rat(1, 3));
  CHECK(r.primal[0] == Rat(1, 3));
  CHECK(primal_feasible(lp, r.primal));
  CHECK(dual_certifies(lp, r.dual, r.optimum));
}

TEST_CASE("degenerate program with redundant equalities terminates") {
  // x + y = 1 stated three times, plus x - y = 0
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Rat(1), Rat(2)};
  for (int i = 0; i < 3; i++)
    lp.rows.push_back(row({{0, Rat(1)}, {1, Rat(1)}}, RelOp::EQ, Rat(1)));
  lp.rows.push_back(row({{0, Rat(1)}, {1, Rat(-1)}}, RelOp::EQ, Rat(0)));
  LpResult r = simplex_solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.optimum == Rat(3, 2));
  CHECK(r.primal[0] == Rat(1, 2));
  CHECK(r.primal[1] == Rat(1, 2));
  CHECK(dual_certifies(lp, r.dual, r.optimum));
}

TEST_CASE("mixed relations and negative right-hand sides") {
  // max 3x + 2y  s.t.  x + y <= 4,  x - y >= -2,  y >= 1
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Rat(3), Rat(2)};
  lp.rows.push_back(row({{0, Rat(1)}, {1, Rat(1)}}, RelOp::LE, Rat(4)));
  lp.rows.push_back(row({{0, Rat(1)}, {1, Rat(-1)}}, RelOp::GE, Rat(-2)));
  lp.rows.push_back(row({{1, Rat(1)}}, RelOp::GE, Rat(1)));
  LpResult r = simplex_solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.optimum == Rat(11));  // x = 3, y = 1
  CHECK(primal_feasible(lp, r.primal));
  CHECK(dual_certifies(lp, r.dual, r.optimum));
}

TEST_CASE("infeasible program yields a Farkas certificate") {
  // x <= 1, x >= 2
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {Rat(0)};
  lp.rows.push_back(row({{0, Rat(1)}}, RelOp::LE, Rat(1)));
  lp.rows.push_back(row({{0, Rat(1)}}, RelOp::GE, Rat(2)));
  LpResult r = simplex_solve(lp);
  REQUIRE(r.status == LpStatus::Infeasible);
  // y^T A >= 0, y^T b < 0, y_le >= 0, y_ge <= 0
  REQUIRE(r.dual.size() == 2);
  CHECK(r.dual[0] >= Rat(0));
  CHECK(r.dual[1] <= Rat(0));
  CHECK(r.dual[0] * Rat(1) + r.dual[1] * Rat(1) >= Rat(0));
  CHECK(r.dual[0] * Rat(1) + r.dual[1] * Rat(2) < Rat(0));
}

TEST_CASE("unbounded program yields an improving ray") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Rat(1), Rat(0)};
  lp.rows.push_back(row({{1, Rat(1)}}, RelOp::LE, Rat(5)));
  LpResult r = simplex_solve(lp);
  REQUIRE(r.status == LpStatus::Unbounded);
  // the ray improves the objective and preserves feasibility directions
  Rat gain;
  for (int v = 0; v < lp.num_vars; v++) gain += lp.objective[v] * r.ray[v];
  CHECK(gain > Rat(0));
}

TEST_CASE("equality-only system") {
  // max x + y  s.t.  x + 2y = 3, x = 1
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Rat(1), Rat(1)};
  lp.rows.push_back(row({{0, Rat(1)}, {1, Rat(2)}}, RelOp::EQ, Rat(3)));
  lp.rows.push_back(row({{0, Rat(1)}}, RelOp::EQ, Rat(1)));
  LpResult r = simplex_solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.optimum == Rat(2));
  CHECK(r.primal[0] == Rat(1));
  CHECK(r.primal[1] == Rat(1));
  CHECK(dual_certifies(lp, r.dual, r.optimum));
}
