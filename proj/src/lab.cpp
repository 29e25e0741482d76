#include "lab.hpp"

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace parrep {

namespace {

// Precompiled evaluator for strategies of g^(x)n in repeated-table form.
struct RepeatedEvaluator {
  const Game& g;
  int n;
  std::vector<std::vector<int>> points;            // support index sequences
  std::vector<Rat> weight;                         // product weights
  std::vector<std::vector<uint64_t>> qrank;        // point -> per player
  std::vector<std::vector<std::vector<int>>> digits;  // player -> arank -> per copy
  std::vector<int> rows;                           // per player: |X^j|^n
  std::vector<int> aranks;                         // per player: |A^j|^n

  RepeatedEvaluator(const Game& game, int copies) : g(game), n(copies) {
    uint64_t cap = uint64_t(1) << 22;
    for (int j = 0; j < g.players; j++) {
      uint64_t r = checked_pow(g.questions[j].size(), n, cap);
      uint64_t a = checked_pow(g.answers[j].size(), n, cap);
      if (r > cap || a > cap)
        fail(ErrorKind::budget_exceeded, "/", "repeated tables exceed budget");
      rows.push_back(static_cast<int>(r));
      aranks.push_back(static_cast<int>(a));
      std::vector<std::vector<int>> dig(a, std::vector<int>(n));
      for (uint64_t v = 0; v < a; v++) {
        uint64_t x = v;
        for (int i = n - 1; i >= 0; i--) {
          dig[v][i] = static_cast<int>(x % g.answers[j].size());
          x /= g.answers[j].size();
        }
      }
      digits.push_back(std::move(dig));
    }
    if (checked_pow(g.support.size(), n, cap) > cap)
      fail(ErrorKind::budget_exceeded, "/", "repeated support exceeds budget");
    points = all_tuples(std::vector<int>(n, static_cast<int>(g.support.size())));
    for (const auto& pt : points) {
      Rat w(1);
      for (int i = 0; i < n; i++) w *= g.support[pt[i]].second;
      weight.push_back(w);
      std::vector<uint64_t> qr(g.players, 0);
      for (int j = 0; j < g.players; j++)
        for (int i = 0; i < n; i++)
          qr[j] = qr[j] * g.questions[j].size() + g.support[pt[i]].first[j];
      qrank.push_back(std::move(qr));
    }
  }

  bool wins_point(const ProductStrategy& s, std::size_t p) const {
    Tuple a(g.players);
    for (int i = 0; i < n; i++) {
      for (int j = 0; j < g.players; j++)
        a[j] = digits[j][s.tables[j][qrank[p][j]]][i];
      if (!g.wins(g.support[points[p][i]].first, a)) return false;
    }
    return true;
  }

  Rat value(const ProductStrategy& s) const {
    Rat v;
    for (std::size_t p = 0; p < points.size(); p++)
      if (wins_point(s, p)) v += weight[p];
    return v;
  }
};

}  // namespace

// --- Monte Carlo ------------------------------------------------------------------

McEstimate mc_win_estimate(const Game& g, int n, const ProductStrategy& s, uint64_t trials,
                           uint64_t seed, int threads) {
  if (trials == 0) fail(ErrorKind::bad_request, "/trials", "need at least one trial");
  // shape check without materializing the evaluator's support product
  for (int j = 0; j < g.players; j++) {
    uint64_t want = checked_pow(g.questions[j].size(), n, ~uint64_t(0) - 1);
    uint64_t amax = checked_pow(g.answers[j].size(), n, ~uint64_t(0) - 1);
    if (s.tables[j].size() != want)
      fail(ErrorKind::alphabet_mismatch, "/strategy", "table shape mismatch");
    for (int v : s.tables[j])
      if (v < 0 || static_cast<uint64_t>(v) >= amax)
        fail(ErrorKind::alphabet_mismatch, "/strategy", "answer index out of range");
  }

  // cumulative integer thresholds for exact support sampling
  mpz_class den = 1;
  for (const auto& [q, w] : g.support)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), w.den().get_mpz_t());
  std::vector<mpz_class> cum;
  mpz_class acc = 0;
  for (const auto& [q, w] : g.support) {
    acc += w.num() * mpz_class(den / w.den());
    cum.push_back(acc);
  }
  bool small = den.fits_ulong_p() && den.get_ui() <= (uint64_t(1) << 62);
  uint64_t den_small = small ? den.get_ui() : 0;
  std::vector<uint64_t> cum_small;
  if (small)
    for (const auto& c : cum) cum_small.push_back(c.get_ui());

  auto run_trial = [&](uint64_t t) {
    CounterRng rng = CounterRng(seed).substream(t);
    std::vector<int> pts(n);
    for (int i = 0; i < n; i++) {
      if (small) {
        uint64_t r = rng.below(den_small);
        pts[i] = static_cast<int>(
            std::upper_bound(cum_small.begin(), cum_small.end(), r) - cum_small.begin());
      } else {
        mpz_class r = rng.below_mpz(den);
        pts[i] =
            static_cast<int>(std::upper_bound(cum.begin(), cum.end(), r) - cum.begin());
      }
    }
    Tuple a(g.players);
    std::vector<uint64_t> ar(g.players);
    for (int j = 0; j < g.players; j++) {
      uint64_t qr = 0;
      for (int i = 0; i < n; i++)
        qr = qr * g.questions[j].size() + g.support[pts[i]].first[j];
      ar[j] = static_cast<uint64_t>(s.tables[j][qr]);
    }
    for (int i = n - 1; i >= 0; i--) {
      for (int j = 0; j < g.players; j++) {
        a[j] = static_cast<int>(ar[j] % g.answers[j].size());
        ar[j] /= g.answers[j].size();
      }
      if (!g.wins(g.support[pts[i]].first, a)) return false;
    }
    return true;
  };

  std::atomic<uint64_t> wins{0};
  int workers = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; w++)
    pool.emplace_back([&, w]() {
      uint64_t local = 0;
      for (uint64_t t = w; t < trials; t += workers) local += run_trial(t);
      wins += local;
    });
  for (auto& th : pool) th.join();

  McEstimate e;
  e.trials = trials;
  e.wins = wins.load();
  e.estimate = static_cast<double>(e.wins) / static_cast<double>(trials);
  e.radius = std::sqrt(std::log(200.0) / (2.0 * static_cast<double>(trials)));
  return e;
}

// --- heuristic search ----------------------------------------------------------------

namespace {

constexpr uint64_t kRestartEvals = 4096;

ProductStrategy random_tables(const RepeatedEvaluator& ev, CounterRng& rng) {
  ProductStrategy s;
  for (int j = 0; j < ev.g.players; j++) {
    std::vector<int> t(ev.rows[j]);
    for (int& v : t) v = static_cast<int>(rng.below(ev.aranks[j]));
    s.tables.push_back(std::move(t));
  }
  return s;
}

std::optional<ProductStrategy> baseline_tables(const Game& g, const RepeatedEvaluator& ev) {
  ValueResult base;
  try {
    base = game_value(g);
  } catch (const DomainError&) {
    return std::nullopt;  // base game too large to exhaust
  }
  ProductStrategy s;
  for (int j = 0; j < g.players; j++) {
    std::vector<int> t(ev.rows[j]);
    for (int row = 0; row < ev.rows[j]; row++) {
      // decode the question tuple of this row, answer copy-wise optimally
      uint64_t v = row;
      std::vector<int> qs(ev.n);
      for (int i = ev.n - 1; i >= 0; i--) {
        qs[i] = static_cast<int>(v % g.questions[j].size());
        v /= g.questions[j].size();
      }
      uint64_t rank = 0;
      for (int i = 0; i < ev.n; i++)
        rank = rank * g.answers[j].size() + base.witness.tables[j][qs[i]];
      t[row] = static_cast<int>(rank);
    }
    s.tables.push_back(std::move(t));
  }
  return s;
}

}  // namespace

HeuristicResult heuristic_value_search(const Game& g, int n, uint64_t budget, uint64_t seed,
                                       int threads) {
  RepeatedEvaluator ev(g, n);
  auto baseline = baseline_tables(g, ev);

  uint64_t restarts = budget == 0 ? 1 : (budget + kRestartEvals - 1) / kRestartEvals;
  std::vector<Rat> values(restarts, Rat(-1));
  std::vector<ProductStrategy> witnesses(restarts);
  std::atomic<uint64_t> evals_total{0};

  int total_cells = 0;
  for (int j = 0; j < g.players; j++) total_cells += ev.rows[j];
  uint64_t stall_limit = 64 + 8 * static_cast<uint64_t>(total_cells);

  auto run_restart = [&](uint64_t r) {
    CounterRng rng = CounterRng(seed).substream(r);
    ProductStrategy cur;
    if (r == 0 && baseline)
      cur = *baseline;
    else
      cur = random_tables(ev, rng);
    Rat cur_value = ev.value(cur);
    uint64_t evals = 1;
    uint64_t cap = budget == 0 ? 1 : kRestartEvals;
    uint64_t stall = 0;
    while (evals < cap && stall < stall_limit) {
      int j = static_cast<int>(rng.below(g.players));
      int row = static_cast<int>(rng.below(ev.rows[j]));
      int fresh = static_cast<int>(rng.below(ev.aranks[j]));
      int old = cur.tables[j][row];
      if (fresh == old) {
        stall++;
        continue;
      }
      cur.tables[j][row] = fresh;
      Rat v = ev.value(cur);
      evals++;
      if (v > cur_value) {
        cur_value = v;
        stall = 0;
      } else {
        cur.tables[j][row] = old;
        stall++;
      }
    }
    values[r] = cur_value;
    witnesses[r] = std::move(cur);
    evals_total += evals;
  };

  int workers = std::max(1, threads);
  std::atomic<uint64_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; w++)
    pool.emplace_back([&]() {
      for (;;) {
        uint64_t r = next.fetch_add(1);
        if (r >= restarts) return;
        run_restart(r);
      }
    });
  for (auto& th : pool) th.join();

  std::size_t arg = 0;
  for (std::size_t r = 1; r < restarts; r++)
    if (values[r] > values[arg]) arg = r;

  HeuristicResult out;
  out.lower_bound = values[arg];
  out.witness = witnesses[arg];
  out.evaluations = evals_total.load();
  out.restarts = restarts;
  return out;
}

// --- correlated spaces -----------------------------------------------------------------

std::vector<SpaceAtom> space_p_atoms() {
  std::vector<SpaceAtom> atoms;
  // y = 0: (x,z) = (xt,zt) = (1,1), weight 1/3
  atoms.push_back({{1, 1, 0, 1, 1}, Rat(1, 3)});
  // y = 1: (x,z) and (xt,zt) independently uniform on {(0,1),(1,0)}
  for (int x = 0; x < 2; x++)
    for (int xt = 0; xt < 2; xt++)
      atoms.push_back({{x, xt, 1, 1 - x, 1 - xt}, Rat(1, 6)});
  return atoms;
}

std::vector<SpaceAtom> space_c_atoms() {
  std::vector<SpaceAtom> atoms;
  for (int x = 0; x < 2; x++) {
    Rat wx = x == 1 ? Rat(2, 3) : Rat(1, 3);
    for (int s = 0; s < 2; s++) {
      Rat ws = s == 1 ? Rat(1, 4) : Rat(3, 4);
      for (int xt = 0; xt < 2; xt++) {
        Rat wxt;
        if (s == 1)
          wxt = xt == x ? Rat(1) : Rat(0);
        else
          wxt = xt == 1 ? Rat(2, 3) : Rat(1, 3);
        if (wxt.is_zero()) continue;
        if (xt == 0) {
          atoms.push_back({{x, s, xt, 1, 1}, wx * ws * wxt});
        } else {
          for (int yt = 0; yt < 2; yt++)
            atoms.push_back({{x, s, xt, yt, 1 - yt}, wx * ws * wxt * Rat(1, 2)});
        }
      }
    }
  }
  return atoms;
}

Dist space_joint(const std::vector<SpaceAtom>& atoms, int n, const std::vector<int>& fields,
                 int max_n) {
  if (n < 1 || n > max_n)
    fail(ErrorKind::budget_exceeded, "/n",
         "exact mode supports up to " + std::to_string(max_n) + " coordinates");
  Dist dist;
  std::vector<int> idx(n, 0);
  for (;;) {
    Rat w(1);
    std::vector<int> key;
    for (int i = 0; i < n; i++) {
      w *= atoms[idx[i]].w;
      for (int f : fields) key.push_back(atoms[idx[i]].v[f]);
    }
    dist[key] += w;
    int i = n - 1;
    for (; i >= 0; i--) {
      if (++idx[i] < static_cast<int>(atoms.size())) break;
      idx[i] = 0;
    }
    if (i < 0) break;
  }
  return dist;
}

SpaceSample space_p_sample(int n, uint64_t seed, uint64_t trial) {
  CounterRng rng = CounterRng(seed).substream(trial);
  SpaceSample out;
  for (int i = 0; i < n; i++) {
    std::array<int, 5> c;
    int y = rng.below(3) < 2 ? 1 : 0;
    c[kPy] = y;
    if (y == 1) {
      c[kPx] = static_cast<int>(rng.below(2));
      c[kPz] = 1 - c[kPx];
      c[kPxt] = static_cast<int>(rng.below(2));
      c[kPzt] = 1 - c[kPxt];
    } else {
      c[kPx] = c[kPz] = c[kPxt] = c[kPzt] = 1;
    }
    out.coords.push_back(c);
  }
  return out;
}

SpaceSample space_c_sample(int n, uint64_t seed, uint64_t trial) {
  CounterRng rng = CounterRng(seed).substream(trial);
  SpaceSample out;
  for (int i = 0; i < n; i++) {
    std::array<int, 5> c;
    c[kCx] = rng.below(3) < 2 ? 1 : 0;
    c[kCs] = rng.below(4) == 0 ? 1 : 0;
    c[kCxt] = c[kCs] ? c[kCx] : (rng.below(3) < 2 ? 1 : 0);
    if (c[kCxt] == 1) {
      c[kCyt] = static_cast<int>(rng.below(2));
      c[kCzt] = 1 - c[kCyt];
    } else {
      c[kCyt] = c[kCzt] = 1;
    }
    out.coords.push_back(c);
  }
  return out;
}

// --- dependency breaking -----------------------------------------------------------------

DependencySample dependency_breaking_sample(const Game& g, int n, const std::vector<Tuple>& x,
                                            uint64_t seed) {
  if (static_cast<int>(x.size()) != n)
    fail(ErrorKind::bad_request, "/x", "need one question tuple per coordinate");
  for (const Tuple& xi : x)
    if (!g.weight(xi))
      fail(ErrorKind::bad_request, "/x", "question tuple off the support");
  CounterRng rng(seed);
  DependencySample out;
  for (int i = 0; i < n; i++) {
    int d = static_cast<int>(rng.below(g.players));
    out.direction.push_back(d);
    Tuple m = x[i];
    m[d] = -1;
    out.others.push_back(std::move(m));
  }
  return out;
}

namespace {

struct Enumeration {
  std::vector<std::vector<int>> pts;  // support index sequences
  std::vector<Tuple> dirs;            // direction sequences
  std::vector<Rat> weight;            // P(pt) / k^n
};

Enumeration enumerate_atoms(const Game& g, int n) {
  Enumeration e;
  uint64_t cap = uint64_t(1) << 22;
  uint64_t s = checked_pow(g.support.size(), n, cap);
  uint64_t k = checked_pow(g.players, n, cap);
  if (s > cap || k > cap || s > cap / k)
    fail(ErrorKind::budget_exceeded, "/n", "exact enumeration too large");
  e.pts = all_tuples(std::vector<int>(n, static_cast<int>(g.support.size())));
  e.dirs = all_tuples(std::vector<int>(n, g.players));
  Rat kinv(1, g.players);
  Rat kn(1);
  for (int i = 0; i < n; i++) kn *= kinv;
  for (const auto& pt : e.pts) {
    Rat w = kn;
    for (int i = 0; i < n; i++) w *= g.support[pt[i]].second;
    e.weight.push_back(w);
  }
  return e;
}

// key of r_{-i}: for each coordinate l != i, the direction and the questions
// of all players except it
std::vector<int> r_key(const Game& g, const std::vector<int>& pt, const Tuple& d, int i) {
  std::vector<int> key;
  for (std::size_t l = 0; l < pt.size(); l++) {
    if (static_cast<int>(l) == i) continue;
    key.push_back(d[l]);
    for (int j = 0; j < g.players; j++)
      if (j != d[l]) key.push_back(g.support[pt[l]].first[j]);
  }
  return key;
}

bool in_event(const Game& g, const ProductEvent* e, const std::vector<int>& pt, int player) {
  if (!e) return true;
  std::vector<int> per_copy(pt.size());
  for (std::size_t i = 0; i < pt.size(); i++) per_copy[i] = g.support[pt[i]].first[player];
  return e->contains(player, per_copy);
}

}  // namespace

bool dependency_factorization_check(const Game& g, int n, int coordinate,
                                    const ProductEvent* e) {
  if (coordinate < 1 || coordinate > n)
    fail(ErrorKind::index_out_of_range, "/i", "coordinate out of range");
  int i = coordinate - 1;
  Enumeration en = enumerate_atoms(g, n);

  // LHS: conditional of the full question assignment given (x_i, r_{-i}, E)
  using Key = std::vector<int>;
  std::map<Key, std::map<std::vector<int>, Rat>> lhs;  // (xi, r) -> pt -> mass
  std::map<Key, Rat> lhs_total;
  // RHS factors: per player: (r, x_i^j) -> x^j -> mass, with only E^j applied
  std::vector<std::map<Key, std::map<std::vector<int>, Rat>>> rhs(g.players);
  std::vector<std::map<Key, Rat>> rhs_total(g.players);

  for (std::size_t a = 0; a < en.pts.size(); a++) {
    const auto& pt = en.pts[a];
    bool in_full = true;
    for (int j = 0; j < g.players; j++) in_full = in_full && in_event(g, e, pt, j);
    for (const auto& d : en.dirs) {
      Rat w = en.weight[a];
      Key rk = r_key(g, pt, d, i);

      if (in_full) {
        Key lk = rk;
        lk.push_back(-2);
        lk.push_back(pt[i]);  // full x_i tuple identified by its support index
        lhs[lk][pt] += w;
        lhs_total[lk] += w;
      }
      for (int j = 0; j < g.players; j++) {
        if (!in_event(g, e, pt, j)) continue;
        Key pk = rk;
        pk.push_back(-3 - j);
        pk.push_back(g.support[pt[i]].first[j]);  // x_i^j only
        std::vector<int> xj(n);
        for (int l = 0; l < n; l++) xj[l] = g.support[pt[l]].first[j];
        rhs[j][pk][xj] += w;
        rhs_total[j][pk] += w;
      }
    }
  }

  for (const auto& [lk, table] : lhs) {
    Key rk(lk.begin(), lk.end() - 2);
    int xi_support = lk.back();
    for (const auto& [pt, mass] : table) {
      Rat left = mass / lhs_total[lk];
      Rat right(1);
      for (int j = 0; j < g.players; j++) {
        Key pk = rk;
        pk.push_back(-3 - j);
        pk.push_back(g.support[xi_support].first[j]);
        std::vector<int> xj(n);
        for (int l = 0; l < n; l++) xj[l] = g.support[pt[l]].first[j];
        right *= rhs[j][pk][xj] / rhs_total[j][pk];
      }
      if (left != right) return false;
    }
  }
  return true;
}

// --- diagnostics ----------------------------------------------------------------------------

namespace {

Rat l1_distance(const std::map<std::vector<int>, Rat>& a, const std::map<std::vector<int>, Rat>& b) {
  Rat d;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    d += abs(v - (it == b.end() ? Rat(0) : it->second));
  }
  for (const auto& [k, v] : b)
    if (!a.count(k)) d += v;
  return d;
}

}  // namespace

DiagnosticReport l1_embedding_diagnostic(const Game& g, int n, const ProductEvent& e) {
  Rat pe = event_probability(g, n, e);
  if (pe.is_zero()) fail(ErrorKind::zero_probability_event, "/event", "P(E) = 0");

  DiagnosticReport rep;
  rep.inv_event_probability = Rat(1) / pe;
  rep.log2_inv_event_probability = std::log2(rep.inv_event_probability.to_double());

  Enumeration en = enumerate_atoms(g, n);

  // per-coordinate L1 between P_{X_i|E} and P_{X_i} = Q
  std::map<std::vector<int>, Rat> q_dist;
  for (std::size_t p = 0; p < g.support.size(); p++)
    q_dist[{static_cast<int>(p)}] = g.support[p].second;
  for (int i = 0; i < n; i++) {
    std::map<std::vector<int>, Rat> cond;
    Rat total;
    for (std::size_t a = 0; a < en.pts.size(); a++) {
      const auto& pt = en.pts[a];
      bool in_full = true;
      for (int j = 0; j < g.players; j++) in_full = in_full && in_event(g, &e, pt, j);
      if (!in_full) continue;
      Rat w(1);
      for (int l = 0; l < n; l++) w *= g.support[pt[l]].second;
      cond[{pt[i]}] += w;
      total += w;
    }
    for (auto& [k, v] : cond) v /= total;
    rep.per_coordinate.push_back(l1_distance(cond, q_dist));
    rep.average += rep.per_coordinate.back();
  }
  rep.average /= Rat(n);

  // per player j: E_i E_{r_{-i} ~ P_{R_{-i}|E^j}} || P_{X_i|r_{-i},E^j} - Q ||_1
  for (int j = 0; j < g.players; j++) {
    Rat avg;
    for (int i = 0; i < n; i++) {
      std::map<std::vector<int>, std::map<std::vector<int>, Rat>> groups;
      std::map<std::vector<int>, Rat> group_mass;
      Rat total;
      for (std::size_t a = 0; a < en.pts.size(); a++) {
        const auto& pt = en.pts[a];
        if (!in_event(g, &e, pt, j)) continue;
        for (const auto& d : en.dirs) {
          std::vector<int> rk = r_key(g, pt, d, i);
          groups[rk][{pt[i]}] += en.weight[a];
          group_mass[rk] += en.weight[a];
          total += en.weight[a];
        }
      }
      for (auto& [rk, table] : groups) {
        std::map<std::vector<int>, Rat> cond = table;
        for (auto& [k, v] : cond) v /= group_mass[rk];
        avg += (group_mass[rk] / total) * l1_distance(cond, q_dist);
      }
    }
    rep.per_player_average.push_back(avg / Rat(n));
  }
  return rep;
}

namespace {

// certified q <= -ln(p) for exact rationals, via directed rounding
bool certified_le_neg_log(const Rat& q, const Rat& p) {
  if (q.sign() < 0) return true;
  if (p == Rat(1)) return q.is_zero();
  for (mpfr_prec_t prec = 128; prec <= 4096; prec *= 2) {
    mpfr_t pf, lo, hi;
    mpfr_init2(pf, prec);
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    // lower bound of -ln(p): negate an upper bound of ln(p)
    mpfr_set_q(pf, p.mpq().get_mpq_t(), MPFR_RNDU);
    mpfr_log(lo, pf, MPFR_RNDU);
    mpfr_neg(lo, lo, MPFR_RNDN);  // exact
    // upper bound of -ln(p)
    mpfr_set_q(pf, p.mpq().get_mpq_t(), MPFR_RNDD);
    mpfr_log(hi, pf, MPFR_RNDD);
    mpfr_neg(hi, hi, MPFR_RNDN);  // exact
    int cmp_lo = mpfr_cmp_q(lo, q.mpq().get_mpq_t());
    int cmp_hi = mpfr_cmp_q(hi, q.mpq().get_mpq_t());
    mpfr_clears(pf, lo, hi, static_cast<mpfr_ptr>(nullptr));
    if (cmp_lo >= 0) return true;   // q <= lower bound
    if (cmp_hi < 0) return false;   // q > upper bound
  }
  fail(ErrorKind::internal_error, "/", "interval comparison did not separate");
}

}  // namespace

DiagnosticReport pinsker_check(const ProductDistribution& pd, const std::vector<char>& event) {
  int n = static_cast<int>(pd.coords.size());
  if (n < 1) fail(ErrorKind::bad_request, "/dists", "need at least one coordinate");
  std::vector<int> radii;
  uint64_t space = 1;
  for (const auto& c : pd.coords) {
    Rat sum;
    for (const Rat& w : c) {
      if (w.sign() < 0) fail(ErrorKind::bad_request, "/dists", "negative weight");
      sum += w;
    }
    if (sum != Rat(1)) fail(ErrorKind::bad_request, "/dists", "weights must sum to 1");
    radii.push_back(static_cast<int>(c.size()));
    space *= c.size();
    if (space > (uint64_t(1) << 22))
      fail(ErrorKind::budget_exceeded, "/dists", "product space too large");
  }
  if (event.size() != space)
    fail(ErrorKind::bad_request, "/event", "event mask size mismatch");

  Rat pw;
  std::vector<std::map<std::vector<int>, Rat>> cond(n);
  auto tuples = all_tuples(radii);
  for (std::size_t t = 0; t < tuples.size(); t++) {
    if (!event[t]) continue;
    Rat w(1);
    for (int i = 0; i < n; i++) w *= pd.coords[i][tuples[t][i]];
    pw += w;
    for (int i = 0; i < n; i++) cond[i][{tuples[t][i]}] += w;
  }
  if (pw.is_zero()) fail(ErrorKind::zero_probability_event, "/event", "P(W) = 0");

  DiagnosticReport rep;
  rep.inv_event_probability = Rat(1) / pw;
  rep.log2_inv_event_probability = std::log2(rep.inv_event_probability.to_double());
  for (int i = 0; i < n; i++) {
    std::map<std::vector<int>, Rat> base;
    for (int v = 0; v < radii[i]; v++) base[{v}] = pd.coords[i][v];
    for (auto& [k, v] : cond[i]) v /= pw;
    rep.per_coordinate.push_back(l1_distance(cond[i], base));
    rep.average += rep.per_coordinate.back();
  }
  rep.average /= Rat(n);

  rep.bound = std::sqrt((2.0 * std::log(2.0) / n) * rep.log2_inv_event_probability);
  // average <= sqrt((2 ln2 / n) log2(1/pw))  <=>  average^2 * n / 2 <= -ln(pw)
  rep.pass = certified_le_neg_log(rep.average * rep.average * Rat(n) / Rat(2), pw);
  return rep;
}

// --- decay curves -----------------------------------------------------------------------------

std::string strategy_digest(const ProductStrategy& s) {
  uint64_t h = 1469598103934665603ull;
  for (const auto& table : s.tables)
    for (int v : table)
      for (int b = 0; b < 4; b++) {
        h ^= static_cast<uint64_t>(v >> (8 * b)) & 0xff;
        h *= 1099511628211ull;
      }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<DecayPoint> decay_curve(const Game& g, int n_max, uint64_t seed,
                                    const DecayLimits& limits) {
  if (n_max < 1) fail(ErrorKind::bad_request, "/n-max", "need n >= 1");
  std::vector<DecayPoint> out;
  for (int n = 1; n <= n_max; n++) {
    auto t0 = std::chrono::steady_clock::now();
    DecayPoint pt;
    pt.n = n;

    uint64_t nominal = 1;
    for (int j = 0; j < g.players; j++) {
      uint64_t rows = checked_pow(g.questions[j].size(), n, limits.exhaustive_cutoff);
      uint64_t aranks = checked_pow(g.answers[j].size(), n, limits.exhaustive_cutoff);
      uint64_t per = rows > limits.exhaustive_cutoff || aranks > limits.exhaustive_cutoff
                         ? limits.exhaustive_cutoff + 1
                         : checked_pow(aranks, rows, limits.exhaustive_cutoff);
      nominal = per > limits.exhaustive_cutoff || nominal > limits.exhaustive_cutoff / per
                    ? limits.exhaustive_cutoff + 1
                    : nominal * per;
    }

    bool exact_done = false;
    if (nominal <= limits.exhaustive_cutoff) {
      try {
        Game t = tensor_power(g, n);
        SearchLimits sl;
        sl.max_strategies = limits.exhaustive_cutoff;
        sl.threads = limits.threads;
        ValueResult res = game_value(t, sl);
        pt.exact = res.value;
        pt.lower_bound = res.value;
        pt.method = "exhaustive";
        pt.witness_digest = strategy_digest(res.witness);
        exact_done = true;
      } catch (const DomainError& err) {
        if (err.kind() != ErrorKind::budget_exceeded) throw;
      }
    }
    if (!exact_done) {
      HeuristicResult h = heuristic_value_search(g, n, limits.heuristic_budget,
                                                 mix64(seed + n), limits.threads);
      pt.lower_bound = h.lower_bound;
      pt.method = "hill-climb";
      pt.witness_digest = strategy_digest(h.witness);
    }
    pt.runtime_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace parrep
