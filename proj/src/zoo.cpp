#include "zoo.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "rng.hpp"

namespace parrep {

namespace {

const std::vector<std::string> kBits = {"0", "1"};

RawGame binary3_shell() {
  RawGame raw;
  raw.players = 3;
  raw.questions = {kBits, kBits, kBits};
  raw.answers = {kBits, kBits, kBits};
  return raw;
}

std::vector<std::string> bits(std::initializer_list<int> v) {
  std::vector<std::string> out;
  for (int b : v) out.push_back(b ? "1" : "0");
  return out;
}

void add_win_pairs(RawGame& raw, const std::vector<std::array<int, 3>>& support,
                   const Predicate3& v) {
  for (const auto& q : support)
    for (int a = 0; a < 2; a++)
      for (int b = 0; b < 2; b++)
        for (int c = 0; c < 2; c++)
          if (v(q[0], q[1], q[2], a, b, c))
            raw.win.emplace_back(bits({q[0], q[1], q[2]}), bits({a, b, c}));
}

Game uniform_binary3(const std::vector<std::array<int, 3>>& support, const Predicate3& v) {
  RawGame raw = binary3_shell();
  std::string w = "1/" + std::to_string(support.size());
  for (const auto& q : support) raw.support.emplace_back(bits({q[0], q[1], q[2]}), w);
  add_win_pairs(raw, support, v);
  return validate_game(raw);
}

const std::vector<std::array<int, 3>> kAntiCorrSupport = {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
const std::vector<std::array<int, 3>> kGhzSupport = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
const std::vector<std::array<int, 3>> kFourPointSupport = {
    {0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}};
const std::vector<std::array<int, 3>> kFivePointSupport = {
    {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}};

bool anti_corr_predicate(int x, int y, int z, int a, int b, int c) {
  return x * a + y * b + z * c == 1;
}

std::string bitstring(int v, int k) {
  std::string s(k, '0');
  for (int i = 0; i < k; i++)
    if (v >> (k - 1 - i) & 1) s[i] = '1';
  return s;
}

// 1..k as equal-width decimal strings, so lexicographic order is numeric
std::string index_symbol(int c, int k) {
  std::string widest = std::to_string(k);
  std::string s = std::to_string(c);
  return std::string(widest.size() - s.size(), '0') + s;
}

}  // namespace

Game anti_correlation() { return uniform_binary3(kAntiCorrSupport, anti_corr_predicate); }

Game anti_correlation_weighted(const Rat& w0, const Rat& w1, const Rat& w2) {
  RawGame raw = binary3_shell();
  const Rat* ws[3] = {&w0, &w1, &w2};
  for (int i = 0; i < 3; i++) {
    const auto& q = kAntiCorrSupport[i];
    raw.support.emplace_back(bits({q[0], q[1], q[2]}), ws[i]->str());
  }
  add_win_pairs(raw, kAntiCorrSupport, anti_corr_predicate);
  return validate_game(raw);
}

Game flip_all_questions(const Game& g) {
  if (g.players != 3) fail(ErrorKind::unsupported, "/", "question flip needs 3 players");
  for (int j = 0; j < 3; j++)
    if (g.questions[j] != kBits)
      fail(ErrorKind::unsupported, "/questions", "question flip needs binary questions");
  Game out = g;
  out.support.clear();
  for (const auto& [q, w] : g.support)
    out.support.emplace_back(Tuple{1 - q[0], 1 - q[1], 1 - q[2]}, w);
  std::sort(out.support.begin(), out.support.end());
  out.win.clear();
  for (const auto& [q, a] : g.win) out.win.emplace(Tuple{1 - q[0], 1 - q[1], 1 - q[2]}, a);
  return out;
}

Game ghz_game() {
  return ghz_support_game(
      [](int x, int y, int z, int a, int b, int c) { return (a ^ b ^ c) == (x | y | z); });
}

Game ghz_support_game(const Predicate3& v) { return uniform_binary3(kGhzSupport, v); }

Game four_point_and_game(const Predicate3& v) { return uniform_binary3(kFourPointSupport, v); }

Game five_point_example() {
  return uniform_binary3(kFivePointSupport, [](int x, int y, int z, int a, int b, int c) {
    return (a + b + c == 1) == (x + y + z != 3);
  });
}

Game hw1_canonical(int k) {
  if (k < 1) fail(ErrorKind::bad_request, "/k", "k must be positive");
  if (k > 12) fail(ErrorKind::budget_exceeded, "/k", "k too large");
  RawGame raw;
  raw.players = 3;
  raw.questions = {kBits, kBits, kBits};
  std::vector<std::string> bitsets;
  for (int v = 0; v < (1 << k); v++) bitsets.push_back(bitstring(v, k));
  std::vector<std::string> indices;
  for (int c = 1; c <= k; c++) indices.push_back(index_symbol(c, k));
  raw.answers = {bitsets, bitsets, indices};
  raw.support = {{bits({1, 0, 0}), "1/3"}, {bits({0, 1, 0}), "1/3"}, {bits({0, 0, 1}), "1/3"}};
  for (int a = 0; a < (1 << k); a++)
    for (int b = 0; b < (1 << k); b++)
      for (int c = 1; c <= k; c++) {
        std::vector<std::string> ans = {bitstring(a, k), bitstring(b, k), index_symbol(c, k)};
        if ((a & b) == 0) raw.win.emplace_back(bits({0, 0, 1}), ans);
        if (a >> (k - c) & 1) raw.win.emplace_back(bits({0, 1, 0}), ans);
        if (b >> (k - c) & 1) raw.win.emplace_back(bits({1, 0, 0}), ans);
      }
  return validate_game(raw);
}

ProductStrategy translate_hw1_strategy(const Game& g, int k, int n, const ProductStrategy& s) {
  if (g.players != 3) fail(ErrorKind::unsupported, "/", "translation needs a 3-player game");
  std::set<Tuple> supp;
  for (const auto& [q, w] : g.support) supp.insert(q);
  if (supp != std::set<Tuple>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})
    fail(ErrorKind::unsupported, "/support", "translation needs the hamming-weight-one support");
  for (int j = 0; j < 3; j++)
    if (static_cast<int>(g.answers[j].size()) > k)
      fail(ErrorKind::alphabet_mismatch, "/answers",
           "answers of the source game are not indexable by [k]");

  // The source predicate must be in the normalize_determined form: on each
  // query it only depends on the answers of the two players who receive 0.
  auto depends = [&](const Tuple& q, int j) {
    for (auto it = g.win.lower_bound({q, Tuple()}); it != g.win.end() && it->first == q; ++it) {
      Tuple other = it->second;
      for (int b = 0; b < static_cast<int>(g.answers[j].size()); b++) {
        other[j] = b;
        if (!g.wins(q, other)) return true;
      }
    }
    return false;
  };
  if (depends({1, 0, 0}, 0) || depends({0, 1, 0}, 1) || depends({0, 0, 1}, 2))
    fail(ErrorKind::bad_request, "/",
         "predicate must be normalized so only the 0-players' answers matter");

  if (s.tables.size() != 3)
    fail(ErrorKind::alphabet_mismatch, "/strategy", "wrong number of players");
  uint64_t rows = checked_pow(2, n, uint64_t(1) << 24);
  if (rows > (uint64_t(1) << 24)) fail(ErrorKind::budget_exceeded, "/n", "n too large");

  int csize = static_cast<int>(g.answers[2].size());
  // f_k(x)_i = ( V((0,1,0), (f(x)_i, *, c)) )_{c in [k]} as a k-bit answer of
  // G_k; bit for c sits at position k-c, matching the a_c convention.
  auto a_bits = [&](int f_answer) {
    int v = 0;
    for (int c = 1; c <= k; c++) {
      bool win = c <= csize && g.wins({0, 1, 0}, {f_answer, 0, c - 1});
      v = v << 1 | (win ? 1 : 0);
    }
    return v;
  };
  auto b_bits = [&](int g_answer) {
    int v = 0;
    for (int c = 1; c <= k; c++) {
      bool win = c <= csize && g.wins({1, 0, 0}, {0, g_answer, c - 1});
      v = v << 1 | (win ? 1 : 0);
    }
    return v;
  };

  ProductStrategy out;
  out.tables.resize(3);
  std::vector<int> decoded(n);
  for (int j = 0; j < 3; j++) {
    if (s.tables[j].size() != rows)
      fail(ErrorKind::alphabet_mismatch, "/strategy/" + std::to_string(j),
           "table must be total on {0,1}^n");
    out.tables[j].resize(rows);
    uint64_t out_radix = j == 2 ? static_cast<uint64_t>(k) : (uint64_t(1) << k);
    for (uint64_t row = 0; row < rows; row++) {
      uint64_t rank = static_cast<uint64_t>(s.tables[j][row]);
      for (int i = n - 1; i >= 0; i--) {
        decoded[i] = static_cast<int>(rank % g.answers[j].size());
        rank /= g.answers[j].size();
      }
      uint64_t translated = 0;
      for (int i = 0; i < n; i++) {
        int per_copy = j == 0   ? a_bits(decoded[i])
                       : j == 1 ? b_bits(decoded[i])
                                : decoded[i];  // h_k = h; index c-1 is preserved
        translated = translated * out_radix + static_cast<uint64_t>(per_copy);
      }
      out.tables[j][row] = static_cast<int>(translated);
    }
  }
  return out;
}

Game restricted_two_player(const Game& four_point, int c0, const std::vector<int>& a_set,
                           const std::vector<int>& b_set) {
  const Game& g = four_point;
  if (g.players != 3) fail(ErrorKind::unsupported, "/", "source must be a 3-player game");
  std::set<Tuple> supp;
  for (const auto& [q, w] : g.support) supp.insert(q);
  if (supp != std::set<Tuple>{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}})
    fail(ErrorKind::unsupported, "/support", "source must have the four-point AND support");
  if (c0 < 0 || c0 >= static_cast<int>(g.answers[2].size()))
    fail(ErrorKind::symbol_out_of_alphabet, "/c0", "c0 outside player 3's alphabet");

  std::set<int> in_a(a_set.begin(), a_set.end()), in_b(b_set.begin(), b_set.end());
  RawGame raw;
  raw.players = 2;
  raw.questions = {kBits, kBits};
  raw.answers = {g.answers[0], g.answers[1]};
  raw.support = {{{"0", "0"}, "1/3"}, {{"0", "1"}, "1/3"}, {{"1", "0"}, "1/3"}};
  for (int x = 0; x < 2; x++)
    for (int y = 0; y < 2; y++) {
      if (x == 1 && y == 1) continue;
      for (int a = 0; a < static_cast<int>(g.answers[0].size()); a++)
        for (int b = 0; b < static_cast<int>(g.answers[1].size()); b++) {
          bool ok = g.wins({x, y, 0}, {a, b, c0});
          if (x == 1 && !in_a.count(a)) ok = false;
          if (y == 1 && !in_b.count(b)) ok = false;
          if (ok)
            raw.win.emplace_back(std::vector<std::string>{kBits[x], kBits[y]},
                                 std::vector<std::string>{g.answers[0][a], g.answers[1][b]});
        }
    }
  return validate_game(raw);
}

// --- random 3-CNF --------------------------------------------------------------

CnfFormula random_3cnf(int d, int m, uint64_t seed) {
  if (d < 1) fail(ErrorKind::bad_request, "/d", "d must be positive");
  if (m < 1) fail(ErrorKind::bad_request, "/m", "m must be positive");
  CnfFormula f;
  f.variable_count = d;
  CounterRng rng(seed);
  for (int r = 0; r < m; r++) {
    std::array<Literal, 3> clause;
    for (int p = 0; p < 3; p++) {
      uint64_t u = rng.below(2 * static_cast<uint64_t>(d));
      clause[p].variable = static_cast<int>(u % static_cast<uint64_t>(d));
      clause[p].negated = u >= static_cast<uint64_t>(d);
    }
    f.clauses.push_back(clause);
  }
  return f;
}

namespace {

bool literal_satisfied(const Literal& l, int value) { return (value == 1) != l.negated; }

}  // namespace

Game cnf_game(const CnfFormula& f) {
  int d = f.variable_count;
  std::vector<std::string> vars;
  std::string widest = std::to_string(d);
  for (int v = 1; v <= d; v++) {
    std::string s = std::to_string(v);
    vars.push_back(std::string(widest.size() - s.size(), '0') + s);
  }

  RawGame raw;
  raw.players = 3;
  raw.questions = {vars, vars, vars};
  raw.answers = {kBits, kBits, kBits};

  std::map<std::array<int, 3>, std::vector<const std::array<Literal, 3>*>> by_triple;
  for (const auto& clause : f.clauses)
    by_triple[{clause[0].variable, clause[1].variable, clause[2].variable}].push_back(&clause);

  int m = static_cast<int>(f.clauses.size());
  for (const auto& [triple, clauses] : by_triple) {
    std::vector<std::string> q = {vars[triple[0]], vars[triple[1]], vars[triple[2]]};
    raw.support.emplace_back(q, Rat(static_cast<long>(clauses.size()), m).str());
    for (int a = 0; a < 2; a++)
      for (int b = 0; b < 2; b++)
        for (int c = 0; c < 2; c++) {
          int assign[3] = {a, b, c};
          bool all = true;
          for (const auto* clause : clauses) {
            bool sat = false;
            for (int p = 0; p < 3; p++) sat = sat || literal_satisfied((*clause)[p], assign[p]);
            all = all && sat;
          }
          if (all) raw.win.emplace_back(q, bits({a, b, c}));
        }
  }
  return validate_game(raw);
}

std::pair<CnfFormula, Game> random_3cnf_game(int d, int m, uint64_t seed) {
  CnfFormula f = random_3cnf(d, m, seed);
  return {f, cnf_game(f)};
}

Rat cnf_value(const CnfFormula& f) {
  int d = f.variable_count;
  if (d > 10) fail(ErrorKind::budget_exceeded, "/d", "exhaustive value needs d <= 10");
  int m = static_cast<int>(f.clauses.size());

  // For each assignment of position 1, bucket the residual clauses by their
  // (position-2, position-3) literals; a (s2, s3) pair then misses exactly
  // the buckets indexed by the literals it falsifies.
  auto lit_code = [&](const Literal& l) { return l.variable + (l.negated ? d : 0); };
  auto satisfied = [&](const Literal& l, uint32_t sigma) {
    return ((sigma >> l.variable & 1) == 1) != l.negated;
  };
  int best = -1;
  std::vector<std::vector<int>> cnt(2 * d, std::vector<int>(2 * d));
  std::vector<const std::vector<int>*> rows(d);
  for (uint32_t s1 = 0; s1 < (uint32_t(1) << d); s1++) {
    for (auto& row : cnt) std::fill(row.begin(), row.end(), 0);
    for (const auto& clause : f.clauses)
      if (!satisfied(clause[0], s1)) cnt[lit_code(clause[1])][lit_code(clause[2])]++;
    for (uint32_t s2 = 0; s2 < (uint32_t(1) << d); s2++) {
      for (int v = 0; v < d; v++) rows[v] = &cnt[(s2 >> v & 1) ? v + d : v];
      for (uint32_t s3 = 0; s3 < (uint32_t(1) << d); s3++) {
        int unsat = 0;
        for (int v2 = 0; v2 < d; v2++) {
          const std::vector<int>& row = *rows[v2];
          for (int v3 = 0; v3 < d; v3++) unsat += row[(s3 >> v3 & 1) ? v3 + d : v3];
        }
        if (m - unsat > best) best = m - unsat;
        if (best == m) return Rat(1);
      }
    }
  }
  return Rat(best, m);
}

}  // namespace parrep
