#include "lp.hpp"

#include <algorithm>

#include "error.hpp"

namespace parrep {

namespace {

struct Tableau {
  int m = 0;             // rows
  int cols = 0;          // total columns including rhs
  int structural = 0;    // original variables
  std::vector<std::vector<Rat>> row;  // m x cols, rhs last
  std::vector<Rat> obj;               // reduced costs + negated value, size cols
  std::vector<int> basis;             // basic column per row
  std::vector<int> aux_col;           // per row: its slack or artificial column
  std::vector<int> aux_sign;          // +1 if that column is +e_i, -1 for surplus
  std::vector<bool> is_artificial;    // per column
  std::vector<int> row_sign;          // original row multiplied by this
  uint64_t pivots = 0;

  void pivot(int r, int e) {
    pivots++;
    Rat p = row[r][e];
    for (auto& v : row[r]) v /= p;
    for (int i = 0; i < m; i++) {
      if (i == r || row[i][e].is_zero()) continue;
      Rat f = row[i][e];
      for (int j = 0; j < cols; j++) row[i][j] -= f * row[r][j];
    }
    if (!obj[e].is_zero()) {
      Rat f = obj[e];
      for (int j = 0; j < cols; j++) obj[j] -= f * row[r][j];
    }
    basis[r] = e;
  }

  // objective row for costs c (size cols-1), rebuilt from the current basis
  void set_objective(const std::vector<Rat>& c) {
    obj.assign(cols, Rat(0));
    for (int j = 0; j < cols - 1; j++) obj[j] = c[j];
    for (int i = 0; i < m; i++) {
      const Rat& cb = c[basis[i]];
      if (cb.is_zero()) continue;
      for (int j = 0; j < cols; j++) obj[j] -= cb * row[i][j];
    }
  }

  enum class Step { Optimal, Pivoted, Unbounded };

  // Bland: entering = smallest eligible column with positive reduced cost;
  // leaving = ratio test with smallest basis index tie-break.
  Step step(bool allow_artificial, int* unbounded_col = nullptr) {
    int enter = -1;
    for (int j = 0; j < cols - 1; j++) {
      if (!allow_artificial && is_artificial[j]) continue;
      if (obj[j].sign() > 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return Step::Optimal;

    int leave = -1;
    Rat best_ratio;
    for (int i = 0; i < m; i++) {
      if (row[i][enter].sign() <= 0) continue;
      Rat ratio = row[i][cols - 1] / row[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) {
      if (unbounded_col) *unbounded_col = enter;
      return Step::Unbounded;
    }
    pivot(leave, enter);
    return Step::Pivoted;
  }
};

Tableau build(const LinearProgram& lp) {
  Tableau t;
  t.m = static_cast<int>(lp.rows.size());
  t.structural = lp.num_vars;

  // negate rows with negative rhs, then lay out columns:
  // structural | one aux per row (slack or surplus) | artificials
  std::vector<LinRow> rows = lp.rows;
  t.row_sign.assign(t.m, 1);
  for (int i = 0; i < t.m; i++) {
    if (rows[i].rhs.sign() < 0) {
      t.row_sign[i] = -1;
      rows[i].rhs = -rows[i].rhs;
      for (auto& [v, c] : rows[i].terms) c = -c;
      rows[i].op = rows[i].op == RelOp::LE   ? RelOp::GE
                   : rows[i].op == RelOp::GE ? RelOp::LE
                                             : RelOp::EQ;
    }
  }

  int next = lp.num_vars;
  std::vector<int> art_col(t.m, -1);
  t.aux_col.assign(t.m, -1);
  t.aux_sign.assign(t.m, 1);
  for (int i = 0; i < t.m; i++) {
    if (rows[i].op == RelOp::LE) {
      t.aux_col[i] = next++;
    } else if (rows[i].op == RelOp::GE) {
      t.aux_col[i] = next++;
      t.aux_sign[i] = -1;
    }
  }
  for (int i = 0; i < t.m; i++)
    if (rows[i].op != RelOp::LE) art_col[i] = next++;

  t.cols = next + 1;
  t.is_artificial.assign(t.cols - 1, false);
  t.row.assign(t.m, std::vector<Rat>(t.cols, Rat(0)));
  t.basis.assign(t.m, -1);
  for (int i = 0; i < t.m; i++) {
    for (const auto& [v, c] : rows[i].terms) {
      if (v < 0 || v >= lp.num_vars)
        fail(ErrorKind::bad_request, "/lp", "variable index out of range");
      t.row[i][v] += c;
    }
    if (t.aux_col[i] >= 0) t.row[i][t.aux_col[i]] = Rat(t.aux_sign[i]);
    if (art_col[i] >= 0) {
      t.row[i][art_col[i]] = Rat(1);
      t.is_artificial[art_col[i]] = true;
      t.basis[i] = art_col[i];
      t.aux_col[i] = art_col[i];  // unit column used for dual extraction
      t.aux_sign[i] = 1;
    } else {
      t.basis[i] = t.aux_col[i];
    }
    t.row[i][t.cols - 1] = rows[i].rhs;
  }
  return t;
}

}  // namespace

LpResult simplex_solve(const LinearProgram& lp) {
  if (static_cast<int>(lp.objective.size()) != lp.num_vars)
    fail(ErrorKind::bad_request, "/lp", "objective size mismatch");
  Tableau t = build(lp);

  auto extract_dual = [&](const std::vector<Rat>& costs) {
    std::vector<Rat> y(t.m);
    for (int i = 0; i < t.m; i++) {
      // the aux column of row i has original column (aux_sign * e_i), so
      // obj[col] = cost[col] - aux_sign * y_i
      const Rat& c = costs[t.aux_col[i]];
      Rat yi = (c - t.obj[t.aux_col[i]]) * Rat(t.aux_sign[i]);
      y[i] = Rat(t.row_sign[i]) * yi;
    }
    return y;
  };

  bool has_artificial =
      std::any_of(t.is_artificial.begin(), t.is_artificial.end(), [](bool b) { return b; });
  if (has_artificial) {
    std::vector<Rat> phase1(t.cols - 1, Rat(0));
    for (int j = 0; j < t.cols - 1; j++)
      if (t.is_artificial[j]) phase1[j] = Rat(-1);
    t.set_objective(phase1);
    while (t.step(true) == Tableau::Step::Pivoted) {
    }
    Rat value = -t.obj[t.cols - 1];
    if (value.sign() < 0) {
      LpResult r;
      r.status = LpStatus::Infeasible;
      r.dual = extract_dual(phase1);
      r.pivots = t.pivots;
      return r;
    }
    // pivot leftover basic artificials out where possible; a row whose
    // non-artificial entries are all zero is redundant and keeps its
    // artificial basic at level zero
    for (int i = 0; i < t.m; i++) {
      if (!t.is_artificial[t.basis[i]]) continue;
      for (int j = 0; j < t.cols - 1; j++) {
        if (t.is_artificial[j] || t.row[i][j].is_zero()) continue;
        t.pivot(i, j);
        break;
      }
    }
  }

  std::vector<Rat> phase2(t.cols - 1, Rat(0));
  for (int j = 0; j < lp.num_vars; j++) phase2[j] = lp.objective[j];
  t.set_objective(phase2);
  int unbounded_col = -1;
  Tableau::Step s;
  while ((s = t.step(false, &unbounded_col)) == Tableau::Step::Pivoted) {
  }
  if (s == Tableau::Step::Unbounded) {
    LpResult r;
    r.status = LpStatus::Unbounded;
    // improving ray: unit step along the entering column
    r.ray.assign(lp.num_vars, Rat(0));
    if (unbounded_col < lp.num_vars) r.ray[unbounded_col] = Rat(1);
    for (int i = 0; i < t.m; i++)
      if (t.basis[i] < lp.num_vars) r.ray[t.basis[i]] = -t.row[i][unbounded_col];
    r.pivots = t.pivots;
    return r;
  }

  LpResult r;
  r.status = LpStatus::Optimal;
  r.optimum = -t.obj[t.cols - 1];
  r.primal.assign(lp.num_vars, Rat(0));
  for (int i = 0; i < t.m; i++)
    if (t.basis[i] < lp.num_vars) r.primal[t.basis[i]] = t.row[i][t.cols - 1];
  r.dual = extract_dual(phase2);
  r.pivots = t.pivots;
  return r;
}

bool primal_feasible(const LinearProgram& lp, const std::vector<Rat>& x) {
  if (static_cast<int>(x.size()) != lp.num_vars) return false;
  for (const Rat& v : x)
    if (v.sign() < 0) return false;
  for (const auto& row : lp.rows) {
    Rat lhs;
    for (const auto& [v, c] : row.terms) lhs += c * x[v];
    if (row.op == RelOp::LE && lhs > row.rhs) return false;
    if (row.op == RelOp::GE && lhs < row.rhs) return false;
    if (row.op == RelOp::EQ && lhs != row.rhs) return false;
  }
  return true;
}

bool dual_certifies(const LinearProgram& lp, const std::vector<Rat>& y, const Rat& optimum) {
  if (y.size() != lp.rows.size()) return false;
  // sign conditions
  for (std::size_t i = 0; i < lp.rows.size(); i++) {
    if (lp.rows[i].op == RelOp::LE && y[i].sign() < 0) return false;
    if (lp.rows[i].op == RelOp::GE && y[i].sign() > 0) return false;
  }
  // y^T A >= c componentwise
  std::vector<Rat> yta(lp.num_vars, Rat(0));
  for (std::size_t i = 0; i < lp.rows.size(); i++)
    for (const auto& [v, c] : lp.rows[i].terms) yta[v] += y[i] * c;
  for (int v = 0; v < lp.num_vars; v++)
    if (yta[v] < lp.objective[v]) return false;
  // y^T b = optimum
  Rat ytb;
  for (std::size_t i = 0; i < lp.rows.size(); i++) ytb += y[i] * lp.rows[i].rhs;
  return ytb == optimum;
}

}  // namespace parrep
