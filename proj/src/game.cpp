#include "game.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace parrep {

namespace {

std::string tuple_path(const char* root, std::size_t i, const char* field) {
  return std::string("/") + root + "/" + std::to_string(i) + "/" + field;
}

int find_symbol(const std::vector<std::string>& alphabet, const std::string& s) {
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), s);
  if (it == alphabet.end() || *it != s) return -1;
  return static_cast<int>(it - alphabet.begin());
}

Tuple index_tuple(const Game& g, const std::vector<std::vector<std::string>>& alphabets,
                  const std::vector<std::string>& symbols, const char* root, std::size_t i,
                  const char* field) {
  if (static_cast<int>(symbols.size()) != g.players)
    fail(ErrorKind::alphabet_mismatch, tuple_path(root, i, field),
         "tuple has " + std::to_string(symbols.size()) + " entries, expected " +
             std::to_string(g.players));
  Tuple t(g.players);
  for (int j = 0; j < g.players; j++) {
    int idx = find_symbol(alphabets[j], symbols[j]);
    if (idx < 0)
      fail(ErrorKind::symbol_out_of_alphabet,
           tuple_path(root, i, field) + "/" + std::to_string(j),
           "symbol '" + symbols[j] + "' not in player " + std::to_string(j + 1) + "'s alphabet");
    t[j] = idx;
  }
  return t;
}

uint64_t mul_capped(uint64_t a, uint64_t b, uint64_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap + 1;
  return a * b;
}

}  // namespace

int Game::question_index(int player, const std::string& symbol) const {
  return find_symbol(questions[player], symbol);
}

int Game::answer_index(int player, const std::string& symbol) const {
  return find_symbol(answers[player], symbol);
}

std::optional<Rat> Game::weight(const Tuple& q) const {
  auto it = std::lower_bound(support.begin(), support.end(), q,
                             [](const auto& e, const Tuple& t) { return e.first < t; });
  if (it == support.end() || it->first != q) return std::nullopt;
  return it->second;
}

uint64_t Game::question_space() const {
  uint64_t n = 1;
  for (const auto& a : questions) n = mul_capped(n, a.size(), ~uint64_t(0) - 1);
  return n;
}

uint64_t Game::answer_space() const {
  uint64_t n = 1;
  for (const auto& a : answers) n = mul_capped(n, a.size(), ~uint64_t(0) - 1);
  return n;
}

uint64_t checked_pow(uint64_t base, uint64_t exp, uint64_t cap) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; i++) {
    r = mul_capped(r, base, cap);
    if (r > cap) return cap + 1;
  }
  return r;
}

std::vector<Tuple> all_tuples(const std::vector<int>& radii) {
  uint64_t total = 1;
  for (int r : radii) total *= static_cast<uint64_t>(r);
  std::vector<Tuple> out;
  out.reserve(total);
  Tuple t(radii.size(), 0);
  for (uint64_t c = 0; c < total; c++) {
    out.push_back(t);
    for (int i = static_cast<int>(radii.size()) - 1; i >= 0; i--) {
      if (++t[i] < radii[i]) break;
      t[i] = 0;
    }
  }
  return out;
}

Game validate_game(const RawGame& raw) {
  if (raw.players < 1) fail(ErrorKind::bad_request, "/players", "player count must be positive");
  if (static_cast<int>(raw.questions.size()) != raw.players)
    fail(ErrorKind::bad_request, "/questions",
         "expected " + std::to_string(raw.players) + " question alphabets");
  if (static_cast<int>(raw.answers.size()) != raw.players)
    fail(ErrorKind::bad_request, "/answers",
         "expected " + std::to_string(raw.players) + " answer alphabets");

  Game g;
  g.players = raw.players;
  g.questions = raw.questions;
  g.answers = raw.answers;
  for (auto [alphabets, root] : {std::pair{&g.questions, "questions"}, {&g.answers, "answers"}}) {
    for (int j = 0; j < g.players; j++) {
      auto& a = (*alphabets)[j];
      if (a.empty())
        fail(ErrorKind::bad_request, std::string("/") + root + "/" + std::to_string(j),
             "empty alphabet");
      std::sort(a.begin(), a.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end())
        fail(ErrorKind::duplicate_entry, std::string("/") + root + "/" + std::to_string(j),
             "duplicate symbol in alphabet");
    }
  }

  Rat sum;
  std::map<Tuple, Rat> weights;
  for (std::size_t i = 0; i < raw.support.size(); i++) {
    const auto& [symbols, wstr] = raw.support[i];
    Tuple t = index_tuple(g, g.questions, symbols, "support", i, "q");
    auto w = Rat::parse(wstr);
    if (!w)
      fail(ErrorKind::bad_request, tuple_path("support", i, "w"),
           "cannot parse rational '" + wstr + "'");
    if (w->sign() < 0)
      fail(ErrorKind::bad_request, tuple_path("support", i, "w"), "negative weight");
    sum += *w;
    if (w->is_zero()) continue;  // zero-probability points are stripped
    auto [it, inserted] = weights.emplace(std::move(t), *w);
    if (!inserted)
      fail(ErrorKind::duplicate_entry, tuple_path("support", i, "q"), "duplicate support tuple");
  }
  if (sum != Rat(1))
    fail(ErrorKind::invalid_weight_sum, "/support", "weights sum to " + sum.str());
  if (weights.empty()) fail(ErrorKind::empty_support, "/support", "support is empty");
  g.support.assign(weights.begin(), weights.end());

  for (std::size_t i = 0; i < raw.win.size(); i++) {
    const auto& [qs, as] = raw.win[i];
    Tuple q = index_tuple(g, g.questions, qs, "win", i, "q");
    Tuple a = index_tuple(g, g.answers, as, "win", i, "a");
    g.win.emplace(std::move(q), std::move(a));
  }
  return g;
}

std::vector<int> ProductStrategy::encoding() const {
  std::vector<int> out;
  for (const auto& t : tables) out.insert(out.end(), t.begin(), t.end());
  return out;
}

void check_strategy_shape(const Game& g, const ProductStrategy& s) {
  if (static_cast<int>(s.tables.size()) != g.players)
    fail(ErrorKind::alphabet_mismatch, "/strategy", "wrong number of players");
  for (int j = 0; j < g.players; j++) {
    if (s.tables[j].size() != g.questions[j].size())
      fail(ErrorKind::alphabet_mismatch, "/strategy/" + std::to_string(j),
           "table must be total on the question alphabet");
    for (int a : s.tables[j])
      if (a < 0 || a >= static_cast<int>(g.answers[j].size()))
        fail(ErrorKind::alphabet_mismatch, "/strategy/" + std::to_string(j),
             "answer index out of range");
  }
}

Rat strategy_value(const Game& g, const ProductStrategy& s) {
  check_strategy_shape(g, s);
  Rat v;
  Tuple a(g.players);
  for (const auto& [q, w] : g.support) {
    for (int j = 0; j < g.players; j++) a[j] = s.tables[j][q[j]];
    if (g.wins(q, a)) v += w;
  }
  return v;
}

// --- exhaustive search -------------------------------------------------------

namespace {

// Precompiled view for the branch-and-bound.  Cells are the (player,
// question) table entries in encoding order; a support point is decided once
// its last cell is assigned.  Weights are scaled to a common denominator so
// masses are plain integers.
struct SearchPlan {
  int num_cells = 0;
  std::vector<int> cell_answers;
  std::vector<std::vector<int>> decided;          // cell -> points decided there
  std::vector<std::vector<int>> point_cells;      // point -> its k cells
  std::vector<std::vector<uint64_t>> point_mult;  // matching radix multipliers
  std::vector<std::vector<char>> win_mask;        // point -> bitmap over answer ranks
  std::vector<mpz_class> weight_num;
  mpz_class total;
};

SearchPlan build_plan(const Game& g) {
  SearchPlan plan;
  std::vector<int> first_cell(g.players);
  for (int j = 0; j < g.players; j++) {
    first_cell[j] = plan.num_cells;
    plan.num_cells += static_cast<int>(g.questions[j].size());
    for (std::size_t q = 0; q < g.questions[j].size(); q++)
      plan.cell_answers.push_back(static_cast<int>(g.answers[j].size()));
  }
  plan.decided.resize(plan.num_cells);

  mpz_class den = 1;
  for (const auto& [q, w] : g.support)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), w.den().get_mpz_t());
  for (std::size_t p = 0; p < g.support.size(); p++) {
    const auto& [q, w] = g.support[p];
    plan.weight_num.push_back(w.num() * mpz_class(den / w.den()));
    plan.total += plan.weight_num.back();

    std::vector<int> cells(g.players);
    std::vector<uint64_t> mult(g.players);
    uint64_t m = 1;
    for (int j = g.players - 1; j >= 0; j--) {
      cells[j] = first_cell[j] + q[j];
      mult[j] = m;
      m *= g.answers[j].size();
    }
    int last = *std::max_element(cells.begin(), cells.end());
    plan.decided[last].push_back(static_cast<int>(p));
    plan.point_cells.push_back(std::move(cells));
    plan.point_mult.push_back(std::move(mult));

    std::vector<char> mask(m, 0);
    Tuple a(g.players, 0);
    for (uint64_t r = 0; r < m; r++) {
      if (g.wins(q, a)) mask[r] = 1;
      for (int j = g.players - 1; j >= 0; j--) {
        if (++a[j] < static_cast<int>(g.answers[j].size())) break;
        a[j] = 0;
      }
    }
    plan.win_mask.push_back(std::move(mask));
  }
  return plan;
}

struct SearchState {
  const SearchPlan& plan;
  std::vector<int> assign;
  mpz_class best = -1;
  std::vector<int> witness;

  explicit SearchState(const SearchPlan& p) : plan(p), assign(p.num_cells, 0) {}

  // Settles the points decided at `cell` under the current assignment,
  // moving their mass from undecided to won as appropriate.
  void settle(int cell, mpz_class& win, mpz_class& undecided) const {
    for (int p : plan.decided[cell]) {
      uint64_t rank = 0;
      for (std::size_t j = 0; j < plan.point_cells[p].size(); j++)
        rank += plan.point_mult[p][j] * static_cast<uint64_t>(assign[plan.point_cells[p][j]]);
      if (plan.win_mask[p][rank])
        win += plan.weight_num[p];
      else
        undecided -= plan.weight_num[p];
    }
  }

  void dfs(int cell, const mpz_class& win, const mpz_class& undecided) {
    if (cell == plan.num_cells) {
      if (win > best) {
        best = win;
        witness = assign;
      }
      return;
    }
    for (int a = 0; a < plan.cell_answers[cell]; a++) {
      assign[cell] = a;
      mpz_class w = win, u = undecided;
      settle(cell, w, u);
      if (w + u <= best) continue;  // cannot strictly improve
      dfs(cell + 1, w, u);
    }
  }
};

ProductStrategy decode_witness(const Game& g, const std::vector<int>& flat) {
  ProductStrategy s;
  std::size_t pos = 0;
  for (int j = 0; j < g.players; j++) {
    s.tables.emplace_back(flat.begin() + pos, flat.begin() + pos + g.questions[j].size());
    pos += g.questions[j].size();
  }
  return s;
}

}  // namespace

ValueResult game_value(const Game& g, const SearchLimits& limits) {
  uint64_t count = 1;
  for (int j = 0; j < g.players; j++) {
    uint64_t per =
        checked_pow(g.answers[j].size(), g.questions[j].size(), limits.max_strategies);
    count = mul_capped(count, per, limits.max_strategies);
    if (count > limits.max_strategies)
      fail(ErrorKind::budget_exceeded, "/",
           "strategy space exceeds budget of " + std::to_string(limits.max_strategies) +
               " strategies");
  }

  SearchPlan plan = build_plan(g);
  int threads = std::max(1, limits.threads);

  if (threads == 1 || plan.num_cells < 2) {
    SearchState st(plan);
    st.dfs(0, 0, plan.total);
    return {Rat(st.best, plan.total), decode_witness(g, st.witness)};
  }

  // Independent prefix tasks combined in encoding order; no state is shared,
  // so the outcome is identical for every worker count.
  int prefix = 0;
  uint64_t tasks = 1;
  while (prefix < plan.num_cells - 1 && tasks < static_cast<uint64_t>(4 * threads)) {
    tasks *= plan.cell_answers[prefix];
    prefix++;
  }
  std::vector<int> radii(plan.cell_answers.begin(), plan.cell_answers.begin() + prefix);
  std::vector<Tuple> prefixes = all_tuples(radii);

  std::vector<mpz_class> bests(prefixes.size(), mpz_class(-1));
  std::vector<std::vector<int>> witnesses(prefixes.size());
  std::atomic<std::size_t> next_task{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t t = next_task.fetch_add(1);
      if (t >= prefixes.size()) return;
      SearchState st(plan);
      mpz_class win = 0, undecided = plan.total;
      for (int c = 0; c < prefix; c++) {
        st.assign[c] = prefixes[t][c];
        st.settle(c, win, undecided);
      }
      st.dfs(prefix, win, undecided);
      bests[t] = st.best;
      witnesses[t] = st.witness;
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < threads; i++) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::size_t arg = 0;
  for (std::size_t t = 1; t < prefixes.size(); t++)
    if (bests[t] > bests[arg]) arg = t;
  return {Rat(bests[arg], plan.total), decode_witness(g, witnesses[arg])};
}

// --- parallel repetition ------------------------------------------------------

namespace {

void check_tensor_symbols(const Game& g) {
  for (const auto& alphabets : {g.questions, g.answers})
    for (const auto& a : alphabets)
      for (const auto& s : a)
        for (char c : s)
          if (static_cast<unsigned char>(c) <= ' ')
            fail(ErrorKind::bad_request, "/",
                 "tensor products require symbols without whitespace or control characters");
}

std::string join_symbols(const std::vector<std::string>& alphabet, const std::vector<int>& idx) {
  std::string out;
  for (std::size_t i = 0; i < idx.size(); i++) {
    if (i) out += ' ';
    out += alphabet[idx[i]];
  }
  return out;
}

// support^n as vectors of base support indices
std::vector<std::vector<int>> support_products(const Game& g, int n, uint64_t cap) {
  if (checked_pow(g.support.size(), n, cap) > cap)
    fail(ErrorKind::budget_exceeded, "/", "repeated support exceeds budget");
  return all_tuples(std::vector<int>(n, static_cast<int>(g.support.size())));
}

Game build_repeated_game(const Game& g, int n, const TensorLimits& limits,
                         const ProductEvent* filter, const Rat* filter_mass) {
  check_tensor_symbols(g);
  if (n < 1) fail(ErrorKind::bad_request, "/n", "repetition count must be positive");

  Game t;
  t.players = g.players;
  for (int j = 0; j < g.players; j++) {
    uint64_t qn = checked_pow(g.questions[j].size(), n, limits.max_alphabet);
    uint64_t an = checked_pow(g.answers[j].size(), n, limits.max_alphabet);
    if (qn > limits.max_alphabet || an > limits.max_alphabet)
      fail(ErrorKind::budget_exceeded, "/", "repeated alphabet exceeds budget");
    std::vector<std::string> qs, as;
    // rank order coincides with lexicographic order for space-joined symbols
    for (const auto& idx : all_tuples(std::vector<int>(n, static_cast<int>(g.questions[j].size()))))
      qs.push_back(join_symbols(g.questions[j], idx));
    for (const auto& idx : all_tuples(std::vector<int>(n, static_cast<int>(g.answers[j].size()))))
      as.push_back(join_symbols(g.answers[j], idx));
    t.questions.push_back(std::move(qs));
    t.answers.push_back(std::move(as));
  }

  auto points = support_products(g, n, limits.max_support);

  std::vector<std::vector<Tuple>> winners(g.support.size());
  for (std::size_t p = 0; p < g.support.size(); p++) {
    const Tuple& q = g.support[p].first;
    for (auto it = g.win.lower_bound({q, Tuple()}); it != g.win.end() && it->first == q; ++it)
      winners[p].push_back(it->second);
  }

  uint64_t win_pairs = 0;
  for (const auto& pt : points) {
    uint64_t prod = 1;
    for (int i = 0; i < n && prod <= limits.max_win_pairs; i++)
      prod = mul_capped(prod, winners[pt[i]].size(), limits.max_win_pairs);
    win_pairs += prod;
    if (win_pairs > limits.max_win_pairs)
      fail(ErrorKind::budget_exceeded, "/", "repeated win set exceeds budget");
  }

  std::vector<int> qrad(g.players), arad(g.players);
  for (int j = 0; j < g.players; j++) {
    qrad[j] = static_cast<int>(g.questions[j].size());
    arad[j] = static_cast<int>(g.answers[j].size());
  }

  auto question_tuple = [&](const std::vector<int>& pt) {
    Tuple qt(g.players);
    for (int j = 0; j < g.players; j++) {
      uint64_t rank = 0;
      for (int i = 0; i < n; i++) rank = rank * qrad[j] + g.support[pt[i]].first[j];
      qt[j] = static_cast<int>(rank);
    }
    return qt;
  };

  for (const auto& pt : points) {
    Tuple qt = question_tuple(pt);

    bool keep = true;
    if (filter) {
      for (int j = 0; j < g.players && keep; j++) {
        std::vector<int> per_copy(n);
        for (int i = 0; i < n; i++) per_copy[i] = g.support[pt[i]].first[j];
        keep = filter->contains(j, per_copy);
      }
    }
    if (keep) {
      Rat w(1);
      for (int i = 0; i < n; i++) w *= g.support[pt[i]].second;
      if (filter) w /= *filter_mass;
      t.support.emplace_back(qt, w);
    }

    bool winnable = true;
    for (int i = 0; i < n; i++) winnable = winnable && !winners[pt[i]].empty();
    if (!winnable) continue;
    std::vector<std::size_t> pick(n, 0);
    for (;;) {
      Tuple at(g.players);
      for (int j = 0; j < g.players; j++) {
        uint64_t rank = 0;
        for (int i = 0; i < n; i++) rank = rank * arad[j] + winners[pt[i]][pick[i]][j];
        at[j] = static_cast<int>(rank);
      }
      t.win.emplace(qt, std::move(at));
      int i = n - 1;
      for (; i >= 0; i--) {
        if (++pick[i] < winners[pt[i]].size()) break;
        pick[i] = 0;
      }
      if (i < 0) break;
    }
  }
  std::sort(t.support.begin(), t.support.end());
  return t;
}

}  // namespace

Game tensor_power(const Game& g, int n, const TensorLimits& limits) {
  return build_repeated_game(g, n, limits, nullptr, nullptr);
}

ProductEvent make_product_event(const Game& g, int n,
                                std::vector<std::set<std::vector<int>>> sets) {
  ProductEvent e;
  e.copies = n;
  e.sets = std::move(sets);
  if (static_cast<int>(e.sets.size()) != g.players)
    fail(ErrorKind::bad_request, "/event", "need one question set per player");
  for (int j = 0; j < g.players; j++)
    for (const auto& q : e.sets[j]) {
      if (static_cast<int>(q.size()) != n)
        fail(ErrorKind::bad_request, "/event", "tuples must have one question per copy");
      for (int v : q)
        if (v < 0 || v >= static_cast<int>(g.questions[j].size()))
          fail(ErrorKind::symbol_out_of_alphabet, "/event", "question index out of range");
    }
  if (event_probability(g, n, e).is_zero())
    fail(ErrorKind::zero_probability_event, "/event", "event has probability zero");
  return e;
}

Rat event_probability(const Game& g, int n, const ProductEvent& e) {
  if (e.copies != n || static_cast<int>(e.sets.size()) != g.players)
    fail(ErrorKind::bad_request, "/event", "event shape does not match game");
  Rat mass;
  for (const auto& pt : support_products(g, n, uint64_t(1) << 24)) {
    bool in = true;
    for (int j = 0; j < g.players && in; j++) {
      std::vector<int> per_copy(n);
      for (int i = 0; i < n; i++) per_copy[i] = g.support[pt[i]].first[j];
      in = e.contains(j, per_copy);
    }
    if (in) {
      Rat w(1);
      for (int i = 0; i < n; i++) w *= g.support[pt[i]].second;
      mass += w;
    }
  }
  return mass;
}

Game condition_game(const Game& g, int n, const ProductEvent& e, const TensorLimits& limits) {
  Rat mass = event_probability(g, n, e);
  if (mass.is_zero())
    fail(ErrorKind::zero_probability_event, "/event", "event has probability zero");
  return build_repeated_game(g, n, limits, &e, &mass);
}

Game uniformize(const Game& g) {
  Game u = g;
  Rat w(1, static_cast<long>(g.support.size()));
  for (auto& entry : u.support) entry.second = w;
  return u;
}

Game normalize_determined_ordered(const Game& g,
                                  const std::vector<std::pair<int, int>>& order) {
  Game out = g;
  for (const auto& [j, q] : order) {
    const Tuple* unique_point = nullptr;
    int hits = 0;
    for (const auto& [pt, w] : out.support) {
      if (pt[j] == q) {
        hits++;
        unique_point = &pt;
      }
    }
    if (hits != 1) continue;
    Tuple y = *unique_point;

    // V'(y, a) = max over player j's answer of V(y, .): keep the winning
    // patterns of the other players and grant every answer of player j.
    std::set<Tuple> patterns;
    auto it = out.win.lower_bound({y, Tuple()});
    while (it != out.win.end() && it->first == y) {
      Tuple rest = it->second;
      rest[j] = 0;
      patterns.insert(rest);
      it = out.win.erase(it);
    }
    for (const auto& rest : patterns) {
      Tuple a = rest;
      for (int b = 0; b < static_cast<int>(out.answers[j].size()); b++) {
        a[j] = b;
        out.win.emplace(y, a);
      }
    }
  }
  return out;
}

Game normalize_determined(const Game& g) {
  std::vector<std::pair<int, int>> order;
  for (int j = 0; j < g.players; j++)
    for (int q = 0; q < static_cast<int>(g.questions[j].size()); q++) order.emplace_back(j, q);
  return normalize_determined_ordered(g, order);
}

// --- repeated-view evaluation --------------------------------------------------

namespace {

void check_repeated_strategy(const Game& g, int n, const ProductStrategy& s) {
  if (static_cast<int>(s.tables.size()) != g.players)
    fail(ErrorKind::alphabet_mismatch, "/strategy", "wrong number of players");
  for (int j = 0; j < g.players; j++) {
    uint64_t want = checked_pow(g.questions[j].size(), n, ~uint64_t(0) - 1);
    uint64_t amax = checked_pow(g.answers[j].size(), n, ~uint64_t(0) - 1);
    if (s.tables[j].size() != want)
      fail(ErrorKind::alphabet_mismatch, "/strategy/" + std::to_string(j),
           "table must be total on the repeated question alphabet");
    for (int a : s.tables[j])
      if (a < 0 || static_cast<uint64_t>(a) >= amax)
        fail(ErrorKind::alphabet_mismatch, "/strategy/" + std::to_string(j),
             "answer index out of range");
  }
}

void decode_rank(uint64_t rank, uint64_t radix, int n, std::vector<int>& out) {
  for (int i = n - 1; i >= 0; i--) {
    out[i] = static_cast<int>(rank % radix);
    rank /= radix;
  }
}

}  // namespace

Rat repeated_strategy_value(const Game& g, int n, const ProductStrategy& s) {
  check_repeated_strategy(g, n, s);
  Rat v;
  Tuple a(g.players);
  std::vector<std::vector<int>> answers(g.players, std::vector<int>(n));
  for (const auto& pt : support_products(g, n, uint64_t(1) << 24)) {
    for (int j = 0; j < g.players; j++) {
      uint64_t qrank = 0;
      for (int i = 0; i < n; i++)
        qrank = qrank * g.questions[j].size() + g.support[pt[i]].first[j];
      decode_rank(static_cast<uint64_t>(s.tables[j][qrank]), g.answers[j].size(), n, answers[j]);
    }
    bool all = true;
    for (int i = 0; i < n && all; i++) {
      for (int j = 0; j < g.players; j++) a[j] = answers[j][i];
      all = g.wins(g.support[pt[i]].first, a);
    }
    if (all) {
      Rat w(1);
      for (int i = 0; i < n; i++) w *= g.support[pt[i]].second;
      v += w;
    }
  }
  return v;
}

Rat coordinate_value(const Game& g, int n, int i, const ProductStrategy& s) {
  if (i < 1 || i > n) fail(ErrorKind::index_out_of_range, "/i", "coordinate index out of range");
  check_repeated_strategy(g, n, s);
  Rat v;
  Tuple a(g.players);
  std::vector<int> a_copy(n);
  for (const auto& pt : support_products(g, n, uint64_t(1) << 24)) {
    for (int j = 0; j < g.players; j++) {
      uint64_t qrank = 0;
      for (int ii = 0; ii < n; ii++)
        qrank = qrank * g.questions[j].size() + g.support[pt[ii]].first[j];
      decode_rank(static_cast<uint64_t>(s.tables[j][qrank]), g.answers[j].size(), n, a_copy);
      a[j] = a_copy[i - 1];
    }
    if (g.wins(g.support[pt[i - 1]].first, a)) {
      Rat w(1);
      for (int ii = 0; ii < n; ii++) w *= g.support[pt[ii]].second;
      v += w;
    }
  }
  return v;
}

ValueResult coordinate_game_value(const Game& g, int n, int i, const SearchLimits& limits) {
  if (i < 1 || i > n) fail(ErrorKind::index_out_of_range, "/i", "coordinate index out of range");
  check_tensor_symbols(g);

  // The i-th coordinate game: repeated questions, single-copy answers, win
  // predicate read off coordinate i.  Its game_value is by definition the
  // maximizing coordinate value.
  Game c;
  c.players = g.players;
  for (int j = 0; j < g.players; j++) {
    if (checked_pow(g.questions[j].size(), n, uint64_t(1) << 20) > (uint64_t(1) << 20))
      fail(ErrorKind::budget_exceeded, "/", "repeated alphabet exceeds budget");
    std::vector<std::string> qs;
    for (const auto& idx : all_tuples(std::vector<int>(n, static_cast<int>(g.questions[j].size()))))
      qs.push_back(join_symbols(g.questions[j], idx));
    c.questions.push_back(std::move(qs));
    c.answers.push_back(g.answers[j]);
  }

  for (const auto& pt : support_products(g, n, uint64_t(1) << 20)) {
    Rat w(1);
    for (int ii = 0; ii < n; ii++) w *= g.support[pt[ii]].second;
    Tuple qt(c.players);
    for (int j = 0; j < g.players; j++) {
      uint64_t rank = 0;
      for (int ii = 0; ii < n; ii++)
        rank = rank * g.questions[j].size() + g.support[pt[ii]].first[j];
      qt[j] = static_cast<int>(rank);
    }
    c.support.emplace_back(qt, w);
    const Tuple& base_q = g.support[pt[i - 1]].first;
    for (auto it = g.win.lower_bound({base_q, Tuple()}); it != g.win.end() && it->first == base_q;
         ++it)
      c.win.emplace(qt, it->second);
  }
  std::sort(c.support.begin(), c.support.end());
  return game_value(c, limits);
}

}  // namespace parrep
