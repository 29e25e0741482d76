#include "nonsignaling.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace parrep {

namespace {

std::vector<int> identity_map(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  return m;
}

struct Shape {
  std::vector<int> qrad, arad;
  uint64_t qspace = 1, aspace = 1;

  explicit Shape(const Game& g) {
    for (int j = 0; j < g.players; j++) {
      qrad.push_back(static_cast<int>(g.questions[j].size()));
      arad.push_back(static_cast<int>(g.answers[j].size()));
      qspace *= g.questions[j].size();
      aspace *= g.answers[j].size();
    }
  }
  uint64_t var(const Tuple& x, const Tuple& a) const {
    return tuple_rank(x, qrad) * aspace + tuple_rank(a, arad);
  }
};

}  // namespace

const Rat& NsStrategy::at(const Tuple& x, const Tuple& a) const {
  uint64_t xr = tuple_rank(x, question_radii);
  uint64_t ar = tuple_rank(a, answer_radii);
  return p[xr * answer_space() + ar];
}

bool verify_symmetry(const Game& g, const GameSymmetry& s) {
  if (static_cast<int>(s.player_perm.size()) != g.players) return false;
  auto is_permutation = [](const std::vector<int>& m, std::size_t n) {
    if (m.size() != n) return false;
    std::vector<bool> hit(n, false);
    for (int v : m) {
      if (v < 0 || v >= static_cast<int>(n) || hit[v]) return false;
      hit[v] = true;
    }
    return true;
  };
  for (int j = 0; j < g.players; j++) {
    int src = s.player_perm[j];
    if (src < 0 || src >= g.players) return false;
    if (g.questions[j].size() != g.questions[src].size() ||
        g.answers[j].size() != g.answers[src].size())
      return false;
    if (!is_permutation(s.question_map[j], g.questions[j].size()) ||
        !is_permutation(s.answer_map[j], g.answers[j].size()))
      return false;
  }
  // query weights preserved
  for (const auto& [x, w] : g.support) {
    auto w2 = g.weight(s.apply_questions(x));
    if (!w2 || *w2 != w) return false;
  }
  // win set preserved (injective on a finite set, so a bijection)
  for (const auto& [x, a] : g.win)
    if (!g.wins(s.apply_questions(x), s.apply_answers(a))) return false;
  return true;
}

std::vector<GameSymmetry> detect_symmetries(const Game& g) {
  std::vector<GameSymmetry> out;
  if (g.players > 6) return out;

  std::vector<int> perm(g.players);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool shape_ok = true;
    for (int j = 0; j < g.players && shape_ok; j++)
      shape_ok = g.questions[j] == g.questions[perm[j]] && g.answers[j] == g.answers[perm[j]];
    if (!shape_ok) continue;
    bool is_id = true;
    for (int j = 0; j < g.players; j++) is_id = is_id && perm[j] == j;
    if (is_id) continue;
    GameSymmetry s;
    s.player_perm = perm;
    for (int j = 0; j < g.players; j++) {
      s.question_map.push_back(identity_map(static_cast<int>(g.questions[j].size())));
      s.answer_map.push_back(identity_map(static_cast<int>(g.answers[j].size())));
    }
    if (verify_symmetry(g, s)) out.push_back(std::move(s));
  } while (std::next_permutation(perm.begin(), perm.end()));

  // answer-bit flips on subsets of binary-answer players
  std::vector<int> binary;
  for (int j = 0; j < g.players; j++)
    if (g.answers[j].size() == 2) binary.push_back(j);
  if (binary.size() <= 8) {
    for (uint64_t mask = 1; mask < (uint64_t(1) << binary.size()); mask++) {
      GameSymmetry s;
      s.player_perm = identity_map(g.players);
      for (int j = 0; j < g.players; j++) {
        s.question_map.push_back(identity_map(static_cast<int>(g.questions[j].size())));
        s.answer_map.push_back(identity_map(static_cast<int>(g.answers[j].size())));
      }
      for (std::size_t b = 0; b < binary.size(); b++)
        if (mask >> b & 1) s.answer_map[binary[b]] = {1, 0};
      if (verify_symmetry(g, s)) out.push_back(std::move(s));
    }
  }
  return out;
}

namespace {

// Recognizes the space-joined product alphabets produced by tensor_power and
// returns candidate symmetries of that product structure: adjacent position
// transpositions and per-position answer-part flips.  Candidates are only
// suggestions; the caller verifies each against the game before use.
std::vector<GameSymmetry> product_structure_candidates(const Game& g) {
  std::vector<GameSymmetry> out;

  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
      if (c == ' ') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    return parts;
  };

  // per alphabet: the per-position part sets, provided the alphabet is
  // exactly their sorted product
  struct Parts {
    int positions = 0;
    std::vector<std::vector<std::string>> sets;
    std::vector<int> radii;
  };
  auto decompose = [&](const std::vector<std::string>& alphabet,
                       int expect_positions) -> std::optional<Parts> {
    Parts p;
    p.positions = expect_positions;
    for (const std::string& s : alphabet) {
      auto parts = split(s);
      if (p.positions == 0) p.positions = static_cast<int>(parts.size());
      if (static_cast<int>(parts.size()) != p.positions) return std::nullopt;
      p.sets.resize(p.positions);
      for (int i = 0; i < p.positions; i++) p.sets[i].push_back(parts[i]);
    }
    if (p.positions < 2 && expect_positions == 0) return std::nullopt;
    uint64_t product = 1;
    for (auto& set : p.sets) {
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      p.radii.push_back(static_cast<int>(set.size()));
      product *= set.size();
    }
    if (product != alphabet.size()) return std::nullopt;
    // sorted product of sorted part sets is exactly the sorted alphabet
    std::vector<Tuple> tuples = all_tuples(p.radii);
    for (std::size_t r = 0; r < tuples.size(); r++) {
      std::string joined;
      for (int i = 0; i < p.positions; i++) {
        if (i) joined += ' ';
        joined += p.sets[i][tuples[r][i]];
      }
      if (joined != alphabet[r]) return std::nullopt;
    }
    return p;
  };

  int positions = 0;
  std::vector<Parts> qpart(g.players), apart(g.players);
  for (int j = 0; j < g.players; j++) {
    auto q = decompose(g.questions[j], positions);
    if (!q) return out;
    positions = q->positions;
    auto a = decompose(g.answers[j], positions);
    if (!a) return out;
    qpart[j] = std::move(*q);
    apart[j] = std::move(*a);
  }
  if (positions < 2) return out;

  auto digit_map = [](const Parts& p, const std::function<void(Tuple&)>& act) {
    std::vector<Tuple> tuples = all_tuples(p.radii);
    std::vector<int> map(tuples.size());
    for (std::size_t r = 0; r < tuples.size(); r++) {
      Tuple t = tuples[r];
      act(t);
      map[r] = static_cast<int>(tuple_rank(t, p.radii));
    }
    return map;
  };

  // adjacent position transpositions (valid only when the swapped part sets
  // coincide; otherwise verification would reject them anyway)
  for (int i = 0; i + 1 < positions; i++) {
    bool same = true;
    for (int j = 0; j < g.players && same; j++)
      same = qpart[j].sets[i] == qpart[j].sets[i + 1] &&
             apart[j].sets[i] == apart[j].sets[i + 1];
    if (!same) continue;
    GameSymmetry s;
    s.player_perm = identity_map(g.players);
    for (int j = 0; j < g.players; j++) {
      s.question_map.push_back(digit_map(qpart[j], [&](Tuple& t) { std::swap(t[i], t[i + 1]); }));
      s.answer_map.push_back(digit_map(apart[j], [&](Tuple& t) { std::swap(t[i], t[i + 1]); }));
    }
    out.push_back(std::move(s));
  }

  // per-position flips of binary answer parts, over player subsets
  if (g.players <= 8) {
    for (int i = 0; i < positions; i++) {
      std::vector<int> binary;
      for (int j = 0; j < g.players; j++)
        if (apart[j].radii[i] == 2) binary.push_back(j);
      for (uint64_t mask = 1; mask < (uint64_t(1) << binary.size()); mask++) {
        GameSymmetry s;
        s.player_perm = identity_map(g.players);
        for (int j = 0; j < g.players; j++) {
          s.question_map.push_back(identity_map(static_cast<int>(g.questions[j].size())));
          bool flip = false;
          for (std::size_t b = 0; b < binary.size(); b++)
            if ((mask >> b & 1) && binary[b] == j) flip = true;
          if (flip)
            s.answer_map.push_back(digit_map(apart[j], [&](Tuple& t) { t[i] = 1 - t[i]; }));
          else
            s.answer_map.push_back(identity_map(static_cast<int>(g.answers[j].size())));
        }
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<GameSymmetry> tensor_symmetries(const Game& base, int n) {
  std::vector<GameSymmetry> out;
  Shape sh(base);
  for (int j = 0; j < base.players; j++)
    if (checked_pow(sh.qrad[j], n, uint64_t(1) << 22) > (uint64_t(1) << 22) ||
        checked_pow(sh.arad[j], n, uint64_t(1) << 22) > (uint64_t(1) << 22))
      fail(ErrorKind::budget_exceeded, "/", "repeated alphabet exceeds budget");

  // digit permutation of a rank in the given radix: swap copies i and i+1
  auto swapped_rank_map = [&](int radix, int i) {
    uint64_t total = checked_pow(radix, n, uint64_t(1) << 24);
    std::vector<int> map(total);
    std::vector<int> digits(n);
    for (uint64_t r = 0; r < total; r++) {
      uint64_t v = r;
      for (int d = n - 1; d >= 0; d--) {
        digits[d] = static_cast<int>(v % radix);
        v /= radix;
      }
      std::swap(digits[i], digits[i + 1]);
      uint64_t nr = 0;
      for (int d = 0; d < n; d++) nr = nr * radix + digits[d];
      map[r] = static_cast<int>(nr);
    }
    return map;
  };

  for (int i = 0; i + 1 < n; i++) {
    GameSymmetry s;
    s.player_perm = identity_map(base.players);
    for (int j = 0; j < base.players; j++) {
      s.question_map.push_back(swapped_rank_map(sh.qrad[j], i));
      s.answer_map.push_back(swapped_rank_map(sh.arad[j], i));
    }
    out.push_back(std::move(s));
  }

  // per-coordinate lifts of pure answer relabelings of the base game
  for (const GameSymmetry& bs : detect_symmetries(base)) {
    bool pure_answers = true;
    for (int j = 0; j < base.players && pure_answers; j++) {
      pure_answers = bs.player_perm[j] == j;
      for (std::size_t q = 0; q < bs.question_map[j].size() && pure_answers; q++)
        pure_answers = bs.question_map[j][q] == static_cast<int>(q);
    }
    if (!pure_answers) continue;
    for (int i = 0; i < n; i++) {
      GameSymmetry s;
      s.player_perm = identity_map(base.players);
      for (int j = 0; j < base.players; j++) {
        uint64_t qtotal = checked_pow(sh.qrad[j], n, uint64_t(1) << 24);
        s.question_map.push_back(identity_map(static_cast<int>(qtotal)));
        uint64_t atotal = checked_pow(sh.arad[j], n, uint64_t(1) << 24);
        std::vector<int> amap(atotal);
        std::vector<int> digits(n);
        for (uint64_t r = 0; r < atotal; r++) {
          uint64_t v = r;
          for (int d = n - 1; d >= 0; d--) {
            digits[d] = static_cast<int>(v % sh.arad[j]);
            v /= sh.arad[j];
          }
          digits[i] = bs.answer_map[j][digits[i]];
          uint64_t nr = 0;
          for (int d = 0; d < n; d++) nr = nr * sh.arad[j] + digits[d];
          amap[r] = static_cast<int>(nr);
        }
        s.answer_map.push_back(std::move(amap));
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

// --- LP construction -----------------------------------------------------------

namespace {

void check_lp_budget(const Shape& sh, uint64_t max_variables) {
  if (sh.qspace > max_variables || sh.aspace > max_variables ||
      sh.qspace > max_variables / sh.aspace)
    fail(ErrorKind::budget_exceeded, "/",
         "non-signaling program exceeds the variable budget of " +
             std::to_string(max_variables));
}

// Emits one marginal-equality row per consecutive pair of contexts.  J is
// the subset whose marginal is fixed; x_rest runs over the complement.
template <typename Emit>
void ns_equalities(const Game& g, const Shape& sh, NsMode mode, const Emit& emit) {
  int k = g.players;
  std::vector<int> subset;
  auto run_subset = [&](const std::vector<int>& J) {
    std::vector<int> rest;
    for (int j = 0; j < k; j++)
      if (std::find(J.begin(), J.end(), j) == J.end()) rest.push_back(j);

    std::vector<int> xj_rad, aj_rad, xr_rad, ar_rad;
    for (int j : J) xj_rad.push_back(sh.qrad[j]);
    for (int j : J) aj_rad.push_back(sh.arad[j]);
    for (int j : rest) xr_rad.push_back(sh.qrad[j]);
    for (int j : rest) ar_rad.push_back(sh.arad[j]);

    for (const Tuple& xj : all_tuples(xj_rad)) {
      std::vector<Tuple> contexts = all_tuples(xr_rad);
      for (const Tuple& aj : all_tuples(aj_rad)) {
        for (std::size_t c = 0; c + 1 < contexts.size(); c++) {
          // marginal at context c equals marginal at context c+1
          std::vector<std::pair<uint64_t, int>> terms;
          for (int side = 0; side < 2; side++) {
            Tuple x(k), a(k);
            for (std::size_t i = 0; i < J.size(); i++) x[J[i]] = xj[i], a[J[i]] = aj[i];
            const Tuple& ctx = contexts[c + side];
            for (std::size_t i = 0; i < rest.size(); i++) x[rest[i]] = ctx[i];
            for (const Tuple& ar : all_tuples(ar_rad)) {
              for (std::size_t i = 0; i < rest.size(); i++) a[rest[i]] = ar[i];
              terms.emplace_back(sh.var(x, a), side == 0 ? 1 : -1);
            }
          }
          emit(terms);
        }
      }
    }
  };

  if (mode == NsMode::KMinusOne) {
    for (int j = 0; j < k; j++) {
      std::vector<int> J;
      for (int i = 0; i < k; i++)
        if (i != j) J.push_back(i);
      if (!J.empty()) run_subset(J);
    }
  } else {
    for (uint64_t mask = 1; mask + 1 < (uint64_t(1) << k); mask++) {
      std::vector<int> J;
      for (int j = 0; j < k; j++)
        if (mask >> j & 1) J.push_back(j);
      run_subset(J);
    }
  }
}

std::vector<Rat> ns_objective_dense(const Game& g, const Shape& sh) {
  std::vector<Rat> c(sh.qspace * sh.aspace, Rat(0));
  for (const auto& [x, w] : g.support) {
    for (auto it = g.win.lower_bound({x, Tuple()}); it != g.win.end() && it->first == x; ++it)
      c[sh.var(x, it->second)] += w;
  }
  return c;
}

}  // namespace

LinearProgram build_ns_lp(const Game& g, NsMode mode, uint64_t max_variables) {
  Shape sh(g);
  check_lp_budget(sh, max_variables);
  LinearProgram lp;
  lp.num_vars = static_cast<int>(sh.qspace * sh.aspace);
  lp.objective = ns_objective_dense(g, sh);

  std::vector<int> qrad = sh.qrad;
  for (const Tuple& x : all_tuples(qrad)) {
    LinRow row;
    row.op = RelOp::EQ;
    row.rhs = Rat(1);
    for (const Tuple& a : all_tuples(sh.arad))
      row.terms.emplace_back(static_cast<int>(sh.var(x, a)), Rat(1));
    lp.rows.push_back(std::move(row));
  }
  ns_equalities(g, sh, mode, [&](const std::vector<std::pair<uint64_t, int>>& terms) {
    LinRow row;
    row.op = RelOp::EQ;
    row.rhs = Rat(0);
    for (const auto& [v, c] : terms) row.terms.emplace_back(static_cast<int>(v), Rat(c));
    lp.rows.push_back(std::move(row));
  });
  return lp;
}

// --- orbit reduction and solve ----------------------------------------------------

namespace {

struct OrbitPartition {
  std::vector<int> orbit_of;  // var -> orbit id (dense, 0-based)
  std::size_t count = 0;
};

OrbitPartition build_orbits(const Shape& sh,
                            const std::vector<GameSymmetry>& syms) {
  uint64_t total = sh.qspace * sh.aspace;
  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };

  if (!syms.empty()) {
    std::vector<Tuple> xs = all_tuples(sh.qrad);
    std::vector<Tuple> as = all_tuples(sh.arad);
    for (const GameSymmetry& s : syms) {
      std::vector<uint64_t> ximg(xs.size()), aimg(as.size());
      for (std::size_t i = 0; i < xs.size(); i++)
        ximg[i] = tuple_rank(s.apply_questions(xs[i]), sh.qrad);
      for (std::size_t i = 0; i < as.size(); i++)
        aimg[i] = tuple_rank(s.apply_answers(as[i]), sh.arad);
      for (std::size_t xi = 0; xi < xs.size(); xi++)
        for (std::size_t ai = 0; ai < as.size(); ai++) {
          int u = find(static_cast<int>(xi * sh.aspace + ai));
          int v = find(static_cast<int>(ximg[xi] * sh.aspace + aimg[ai]));
          if (u != v) parent[std::max(u, v)] = std::min(u, v);
        }
    }
  }

  OrbitPartition part;
  part.orbit_of.assign(total, -1);
  for (uint64_t v = 0; v < total; v++) {
    int root = find(static_cast<int>(v));
    if (part.orbit_of[root] < 0) part.orbit_of[root] = static_cast<int>(part.count++);
    part.orbit_of[v] = part.orbit_of[root];
  }
  return part;
}

}  // namespace

NsResult ns_value(const Game& g, const NsOptions& options) {
  Shape sh(g);
  check_lp_budget(sh, options.max_variables);

  std::vector<GameSymmetry> syms;
  if (options.use_symmetries) {
    syms = detect_symmetries(g);
    for (GameSymmetry& s : product_structure_candidates(g))
      if (verify_symmetry(g, s)) syms.push_back(std::move(s));
    for (const GameSymmetry& s : options.extra) {
      if (!verify_symmetry(g, s))
        fail(ErrorKind::bad_request, "/symmetries", "supplied symmetry does not fix the game");
      syms.push_back(s);
    }
  }
  OrbitPartition part = build_orbits(sh, syms);

  LinearProgram lp;
  lp.num_vars = static_cast<int>(part.count);
  lp.objective.assign(part.count, Rat(0));
  for (const auto& [x, w] : g.support)
    for (auto it = g.win.lower_bound({x, Tuple()}); it != g.win.end() && it->first == x; ++it)
      lp.objective[part.orbit_of[sh.var(x, it->second)]] += w;

  // deduplicated rows over orbit variables
  std::set<std::pair<std::vector<std::pair<int, long>>, long>> seen;
  auto add_row = [&](const std::map<int, long>& coeffs, long rhs) {
    std::vector<std::pair<int, long>> terms;
    for (const auto& [v, c] : coeffs)
      if (c != 0) terms.emplace_back(v, c);
    if (terms.empty()) return;
    if (!seen.insert({terms, rhs}).second) return;
    LinRow row;
    row.op = RelOp::EQ;
    row.rhs = Rat(rhs);
    for (const auto& [v, c] : terms) row.terms.emplace_back(v, Rat(c));
    lp.rows.push_back(std::move(row));
  };

  for (const Tuple& x : all_tuples(sh.qrad)) {
    std::map<int, long> coeffs;
    for (const Tuple& a : all_tuples(sh.arad)) coeffs[part.orbit_of[sh.var(x, a)]]++;
    add_row(coeffs, 1);
  }
  ns_equalities(g, sh, options.mode, [&](const std::vector<std::pair<uint64_t, int>>& terms) {
    std::map<int, long> coeffs;
    for (const auto& [v, c] : terms) coeffs[part.orbit_of[v]] += c;
    add_row(coeffs, 0);
  });

  LpResult res = simplex_solve(lp);
  if (res.status != LpStatus::Optimal)
    fail(ErrorKind::internal_error, "/",
         "non-signaling polytope solve did not come back optimal");

  NsResult out;
  out.optimum = res.optimum;
  out.orbit_count = part.count;
  out.pivots = res.pivots;
  out.witness.question_radii = sh.qrad;
  out.witness.answer_radii = sh.arad;
  out.witness.p.resize(sh.qspace * sh.aspace);
  for (uint64_t v = 0; v < out.witness.p.size(); v++)
    out.witness.p[v] = res.primal[part.orbit_of[v]];

  if (!verify_ns_strategy(g, out.witness))
    fail(ErrorKind::internal_error, "/", "witness fails exact non-signaling verification");
  Rat achieved;
  for (const auto& [x, w] : g.support)
    for (auto it = g.win.lower_bound({x, Tuple()}); it != g.win.end() && it->first == x; ++it)
      achieved += w * out.witness.at(x, it->second);
  if (achieved != out.optimum)
    fail(ErrorKind::internal_error, "/", "witness objective differs from the optimum");
  return out;
}

NsResult ns_value_repeated(const Game& g, int n, const NsOptions& options) {
  Game t = tensor_power(g, n);
  NsOptions opts = options;
  if (options.use_symmetries) {
    for (GameSymmetry& s : tensor_symmetries(g, n)) {
      if (!verify_symmetry(t, s))
        fail(ErrorKind::internal_error, "/", "tensor symmetry fails verification");
      opts.extra.push_back(std::move(s));
    }
  }
  return ns_value(t, opts);
}

bool verify_ns_strategy(const Game& g, const NsStrategy& s) {
  Shape sh(g);
  if (s.p.size() != sh.qspace * sh.aspace) return false;
  for (const Rat& v : s.p)
    if (v.sign() < 0) return false;
  for (const Tuple& x : all_tuples(sh.qrad)) {
    Rat sum;
    for (const Tuple& a : all_tuples(sh.arad)) sum += s.at(x, a);
    if (sum != Rat(1)) return false;
  }
  bool ok = true;
  ns_equalities(g, sh, NsMode::AllSubsets,
                [&](const std::vector<std::pair<uint64_t, int>>& terms) {
                  if (!ok) return;
                  Rat sum;
                  for (const auto& [v, c] : terms)
                    sum += Rat(c) * s.p[v];
                  if (!sum.is_zero()) ok = false;
                });
  return ok;
}

}  // namespace parrep
