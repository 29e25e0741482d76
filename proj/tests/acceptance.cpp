// Acceptance suite: one line per criterion, "PASS"/"FAIL" plus timing.
// Exits nonzero if any criterion fails or overruns its time budget.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "lab.hpp"
#include "nonsignaling.hpp"
#include "structure.hpp"
#include "zoo.hpp"

using namespace parrep;

namespace {

int failures = 0;

void criterion(int id, const char* label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = secs <= budget_seconds;
  if (!ok || !in_time) failures++;
  std::printf("%s criterion %d [%6.2fs / %gs] %s%s%s\n", ok && in_time ? "PASS" : "FAIL", id,
              secs, budget_seconds, label, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

Game mirror_four_point() {
  return four_point_and_game(
      [](int, int, int z, int a, int b, int c) { return a == z && b == z && c == z; });
}

Game cube_game(const PointSet& points) {
  RawGame raw;
  raw.players = 3;
  raw.questions = {{"0", "1"}, {"0", "1"}, {"0", "1"}};
  raw.answers = {{"0", "1"}, {"0", "1"}, {"0", "1"}};
  std::string w = "1/" + std::to_string(points.size());
  for (int p : points) {
    std::vector<std::string> q = {p & 4 ? "1" : "0", p & 2 ? "1" : "0", p & 1 ? "1" : "0"};
    raw.support.emplace_back(q, w);
    raw.win.emplace_back(q, std::vector<std::string>{"0", "0", "0"});
  }
  return validate_game(raw);
}

std::vector<Game> zoo_games() {
  return {anti_correlation(), ghz_game(),       five_point_example(),
          mirror_four_point(), hw1_canonical(1), hw1_canonical(2)};
}

}  // namespace

int main() {
  int threads = 4;

  criterion(1, "exact anchors: val(anti-corr) = val(G_1) = val(G_2) = 2/3", 1.0,
            [&](std::string&) {
              bool ok = game_value(anti_correlation()).value == Rat(2, 3);
              ok = ok && game_value(hw1_canonical(1)).value == Rat(2, 3);
              ok = ok && game_value(hw1_canonical(2)).value == Rat(2, 3);
              return ok;
            });

  criterion(2, "three-fold repetition reaches 2/3 by hill climbing; n=2 brute force gives 2/3", 600.0,
            [&](std::string& detail) {
              // seed 2026, budget 400000 evaluations (documented in README)
              HeuristicResult h = heuristic_value_search(anti_correlation(), 3, 400000, 2026);
              bool ok = h.lower_bound == Rat(2, 3);
              ok = ok && repeated_strategy_value(anti_correlation(), 3, h.witness) == Rat(2, 3);
              // exhaustive search over the 256^3 strategy triples of the square
              ValueResult square = game_value(tensor_power(anti_correlation(), 2));
              ok = ok && square.value == Rat(2, 3);  // frozen golden
              detail = "n=3 bound " + h.lower_bound.str() + ", n=2 exact " + square.value.str();
              return ok;
            });

  criterion(3, "non-signaling invariance and ns >= classical on the zoo", 300.0,
            [&](std::string& detail) {
              NsResult base = ns_value(anti_correlation());
              NsResult squared = ns_value_repeated(anti_correlation(), 2);
              bool ok = base.optimum == Rat(2, 3) && squared.optimum == Rat(2, 3);
              detail = "ns(G) = " + base.optimum.str() + ", ns(G^2) = " + squared.optimum.str();
              std::vector<Game> games = zoo_games();
              games.push_back(restricted_two_player(mirror_four_point(), 0, {1}, {1}));
              for (const Game& g : games)
                ok = ok && ns_value(g).optimum >= game_value(g).value;
              return ok;
            });

  criterion(4, "classifier totality, five-point uniqueness, 48-symmetry invariance", 10.0,
            [&](std::string& detail) {
              bool ok = true;
              int playerwise_only = 0;
              auto symmetries = all_cube_symmetries();
              for (int mask = 1; mask < 256; mask++) {
                PointSet points;
                for (int p = 0; p < 8; p++)
                  if (mask >> p & 1) points.push_back(p);
                Game g = cube_game(points);
                GameClass c = classify_binary3(g);  // throws on the unreachable branch
                if (c.symmetry && apply_symmetry(*c.symmetry, points) != c.canonical) ok = false;
                if (c.tag == GameTag::TwoPlayerReducible && !c.player_pair) ok = false;
                for (const CubeSymmetry& s : symmetries) {
                  PointSet image = apply_symmetry(s, points);
                  if (classify_binary3(cube_game(image)).tag != c.tag) ok = false;
                }
                if (classify_connectivity(g) == Connectivity::PlayerwiseConnectedOnly)
                  playerwise_only++;
              }
              std::set<PointSet> orbit;
              for (const CubeSymmetry& s : symmetries)
                orbit.insert(apply_symmetry(s, {0, 1, 2, 4, 7}));
              ok = ok && playerwise_only == static_cast<int>(orbit.size());
              std::ostringstream os;
              os << "playerwise-only supports: " << playerwise_only << " (orbit size "
                 << orbit.size() << ")";
              detail = os.str();
              return ok;
            });

  criterion(5, "exact distribution checks: pair tables, coupling equalities, factorization", 60.0,
            [&](std::string&) {
              auto p_atoms = space_p_atoms();
              auto c_atoms = space_c_atoms();
              Dist xxt = space_joint(p_atoms, 1, {kPx, kPxt}, 6);
              bool ok = xxt[{0, 0}] == Rat(1, 6) && xxt[{0, 1}] == Rat(1, 6) &&
                        xxt[{1, 0}] == Rat(1, 6) && xxt[{1, 1}] == Rat(1, 2);
              ok = ok && space_joint(c_atoms, 2, {kCx, kCxt}, 4) ==
                             space_joint(p_atoms, 2, {kPx, kPxt}, 6);
              ok = ok && space_joint(c_atoms, 2, {kCxt, kCyt, kCzt}, 4) ==
                             space_joint(p_atoms, 2, {kPxt, kPy, kPzt}, 6);
              std::vector<Game> games = zoo_games();
              games.push_back(restricted_two_player(mirror_four_point(), 0, {1}, {1}));
              for (const Game& g : games)
                for (int i = 1; i <= 2; i++)
                  ok = ok && dependency_factorization_check(g, 2, i);
              return ok;
            });

  criterion(6, "Pinsker bound: 1000 randomized pairs, zero violations", 60.0,
            [&](std::string& detail) {
              CounterRng rng(20260809);
              int violations = 0;
              double max_ratio = 0;
              for (int t = 0; t < 1000; t++) {
                int n = 1 + static_cast<int>(rng.below(5));
                ProductDistribution pd;
                uint64_t space = 1;
                for (int i = 0; i < n; i++) {
                  int size = 2 + static_cast<int>(rng.below(3));
                  long total = 0;
                  std::vector<long> raw;
                  for (int v = 0; v < size; v++) {
                    long x = 1 + static_cast<long>(rng.below(9));
                    raw.push_back(x);
                    total += x;
                  }
                  std::vector<Rat> weights;
                  for (long x : raw) weights.emplace_back(x, total);
                  pd.coords.push_back(std::move(weights));
                  space *= size;
                }
                std::vector<char> mask(space, 0);
                bool any = false;
                for (uint64_t v = 0; v < space; v++) {
                  mask[v] = rng.below(2) == 0;
                  any = any || mask[v];
                }
                if (!any) mask[rng.below(space)] = 1;
                DiagnosticReport rep = pinsker_check(pd, mask);
                if (!rep.pass) violations++;
                if (rep.bound > 0)
                  max_ratio = std::max(max_ratio, rep.average.to_double() / rep.bound);
              }
              std::ostringstream os;
              os << "violations " << violations << ", max lhs/rhs " << max_ratio;
              detail = os.str();
              return violations == 0;
            });

  criterion(7, "random 3-CNF trends: monotone playerwise fractions and values near 7/8", 900.0,
            [&](std::string& detail) {
              bool ok = true;
              std::ostringstream os;
              for (int d = 4; d <= 8; d++) {
                int log2d = static_cast<int>(std::ceil(std::log2(d)));
                std::vector<int> grid = {d, 2 * d * d, 8 * d * d * log2d};
                std::vector<double> fractions;
                for (int m : grid) {
                  int playerwise = 0;
                  for (uint64_t seed = 0; seed < 100; seed++) {
                    auto [f, g] = random_3cnf_game(d, m, seed);
                    if (classify_connectivity(g) != Connectivity::NotPlayerwiseConnected)
                      playerwise++;
                  }
                  fractions.push_back(playerwise / 100.0);
                }
                for (std::size_t i = 0; i + 1 < fractions.size(); i++)
                  ok = ok && fractions[i] <= fractions[i + 1];
                ok = ok && fractions.front() <= 0.2;
                ok = ok && fractions.back() >= 0.95;
                os << "d=" << d << ": " << fractions[0] << "/" << fractions[1] << "/"
                   << fractions[2] << "; ";
              }
              for (int d = 4; d <= 6; d++) {
                int in_window = 0;
                for (uint64_t seed = 0; seed < 100; seed++) {
                  CnfFormula f = random_3cnf(d, 50 * d, seed);
                  Rat v = cnf_value(f);
                  if (v >= Rat(4, 5) && v < Rat(1)) in_window++;
                }
                os << "d=" << d << " window " << in_window << "/100; ";
                ok = ok && in_window >= 90;
              }
              detail = os.str();
              return ok;
            });

  criterion(8, "monotonicity, supermultiplicativity, GHZ value", 300.0,
            [&](std::string& detail) {
              bool ok = true;
              int skipped = 0;
              std::vector<Game> games = zoo_games();
              games.push_back(restricted_two_player(mirror_four_point(), 0, {1}, {1}));
              for (const Game& g : games) {
                Rat v1 = game_value(g).value;
                try {
                  Rat v2 = game_value(tensor_power(g, 2), {.threads = threads}).value;
                  ok = ok && v2 <= v1 && v2 >= v1 * v1;
                } catch (const DomainError& e) {
                  if (e.kind() != ErrorKind::budget_exceeded) throw;
                  skipped++;  // outside the exhaustive budget
                }
              }
              auto [ghz_oracle, ghz_best] = [&] {
                // 64-triple brute force, the stated oracle
                Rat best(-1);
                ProductStrategy arg;
                Game g = ghz_game();
                for (int a0 = 0; a0 < 2; a0++)
                  for (int a1 = 0; a1 < 2; a1++)
                    for (int b0 = 0; b0 < 2; b0++)
                      for (int b1 = 0; b1 < 2; b1++)
                        for (int c0 = 0; c0 < 2; c0++)
                          for (int c1 = 0; c1 < 2; c1++) {
                            ProductStrategy s;
                            s.tables = {{a0, a1}, {b0, b1}, {c0, c1}};
                            Rat v = strategy_value(g, s);
                            if (v > best) {
                              best = v;
                              arg = s;
                            }
                          }
                return std::make_pair(best, arg);
              }();
              ok = ok && ghz_oracle == Rat(3, 4);
              ok = ok && game_value(ghz_game()).value == Rat(3, 4);
              std::ostringstream os;
              os << "skipped (budget): " << skipped << ", ghz oracle " << ghz_oracle.str();
              detail = os.str();
              return ok;
            });

  criterion(9, "decay exponents are not targets; curve invariants hold", 600.0,
            [&](std::string& detail) {
              DecayLimits limits;
              limits.heuristic_budget = 400000;
              limits.threads = threads;
              auto curve = decay_curve(anti_correlation(), 3, 2026, limits);
              Rat v1 = game_value(anti_correlation()).value;
              bool ok = true;
              Rat power(1);
              for (const auto& pt : curve) {
                power *= v1;
                if (pt.exact) ok = ok && pt.lower_bound <= *pt.exact;
                ok = ok && pt.lower_bound >= power;
              }
              ok = ok && curve[0].exact == Rat(2, 3) && curve[1].exact == Rat(2, 3);
              ok = ok && curve[2].method == "hill-climb";
              detail = "n=3 lower bound " + curve[2].lower_bound.str();
              return ok;
            });

  if (failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
