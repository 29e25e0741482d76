// Experiments beyond exact exhaustion: seeded Monte-Carlo win estimation,
// hill-climbing lower bounds for repeated games, the correlated probability
// spaces of the anti-correlation analysis, the dependency-breaking variable
// and its exact factorization checks, averaged-L1 diagnostics, the
// explicit-constant Pinsker inequality checker, and decay curves.
#pragma once

#include <map>
#include <optional>
#include <string>

#include "game.hpp"
#include "rng.hpp"

namespace parrep {

// --- Monte Carlo -------------------------------------------------------------

struct McEstimate {
  double estimate = 0;
  double radius = 0;  // two-sided 99% Hoeffding radius
  uint64_t wins = 0;
  uint64_t trials = 0;
};

// Unbiased estimate of Pr[win all n coordinates].  Trial t draws its own
// substream of `seed`, so the result is identical for every thread count.
McEstimate mc_win_estimate(const Game& g, int n, const ProductStrategy& s, uint64_t trials,
                           uint64_t seed, int threads = 1);

// --- heuristic lower bounds ----------------------------------------------------

struct HeuristicResult {
  Rat lower_bound;
  ProductStrategy witness;  // repeated-view tables for g^(x)n
  uint64_t evaluations = 0;
  uint64_t restarts = 0;
};

// Single-entry hill climbing over repeated strategy tables, scored by the
// exact repeated_strategy_value; restart 0 is the independent repetition of
// the single-copy optimum, later restarts start from random tables.  The
// returned bound is certified (it is the exact value of the witness).
HeuristicResult heuristic_value_search(const Game& g, int n, uint64_t budget, uint64_t seed,
                                       int threads = 1);

// --- the correlated spaces of the anti-correlation analysis ---------------------

// Exact per-coordinate atoms; coordinates are i.i.d.  Fields of P-space
// atoms: (x, xt, y, z, zt); of C-space atoms: (x, s, xt, yt, zt).
struct SpaceAtom {
  std::array<int, 5> v;
  Rat w;
};
enum : int { kPx = 0, kPxt = 1, kPy = 2, kPz = 3, kPzt = 4 };
enum : int { kCx = 0, kCs = 1, kCxt = 2, kCyt = 3, kCzt = 4 };

std::vector<SpaceAtom> space_p_atoms();
std::vector<SpaceAtom> space_c_atoms();

// Exact joint of selected fields over n coordinates: keys list the selected
// field values coordinate by coordinate.  Budget: 5^n atoms for P (n <= 6),
// 9^n for C (n <= 4).
using Dist = std::map<std::vector<int>, Rat>;
Dist space_joint(const std::vector<SpaceAtom>& atoms, int n, const std::vector<int>& fields,
                 int max_n);

struct SpaceSample {
  std::vector<std::array<int, 5>> coords;  // per coordinate, same field order
};
SpaceSample space_p_sample(int n, uint64_t seed, uint64_t trial);
SpaceSample space_c_sample(int n, uint64_t seed, uint64_t trial);

// --- dependency-breaking variable ------------------------------------------------

struct DependencySample {
  std::vector<int> direction;   // D_i, 0-based player index per coordinate
  std::vector<Tuple> others;    // M_i = x_i without player D_i (that slot is -1)
};

// R_i = (D_i, M_i) with D_i uniform over players and M_i the questions of
// all other players, independently per coordinate.
DependencySample dependency_breaking_sample(const Game& g, int n, const std::vector<Tuple>& x,
                                            uint64_t seed);

// Exact check of the product structure: for every (x_i, r_-i) of positive
// probability (optionally inside a product event E), the conditional joint
// of X factorizes as the product over players of P(X^j | r_-i, x_i^j, E^j).
bool dependency_factorization_check(const Game& g, int n, int coordinate,
                                    const ProductEvent* e = nullptr);

// --- diagnostics -------------------------------------------------------------------

struct DiagnosticReport {
  std::vector<Rat> per_coordinate;      // exact L1 distances per coordinate
  Rat average;                          // their mean
  std::vector<Rat> per_player_average;  // conditioned-on-E^j variant, per player
  Rat inv_event_probability;
  double log2_inv_event_probability = 0;
  double bound = 0;   // comparison bound (Pinsker right-hand side) when set
  bool pass = true;
};

// Averaged L1 quantities of the embedding analysis at exact enumeration
// scale:  per coordinate ||P_{X_i|E} - P_{X_i}||_1, and per player j the
// average over i and r_-i ~ P_{R_-i|E^j} of ||P_{X_i|r_-i,E^j} - P_{X_i}||_1.
// Values are reported for inspection; no constant-bearing inequality is
// asserted here.
DiagnosticReport l1_embedding_diagnostic(const Game& g, int n, const ProductEvent& e);

struct ProductDistribution {
  std::vector<std::vector<Rat>> coords;  // per coordinate, weights summing to 1
};

// (1/n) sum_i ||P_{V_i|W} - P_{V_i}||_1 <= sqrt((2 ln 2 / n) log2(1 / P(W))),
// the explicit-constant chain of super-additivity plus Pinsker.  The
// comparison is certified with directed-rounding interval arithmetic; pass
// is exact, never a float guess.  The event is a bitmap over atom ranks
// (mixed radix, coordinate-major).
DiagnosticReport pinsker_check(const ProductDistribution& pd, const std::vector<char>& event);

// --- decay curves ------------------------------------------------------------------

struct DecayPoint {
  int n = 1;
  std::optional<Rat> exact;
  Rat lower_bound;
  std::string method;          // "exhaustive" or "hill-climb"
  std::string witness_digest;  // fnv1a-64 of the strategy encoding, hex
  double runtime_ms = 0;
};

struct DecayLimits {
  uint64_t exhaustive_cutoff = uint64_t(1) << 25;  // nominal strategy count
  uint64_t heuristic_budget = 200000;              // evaluations per n
  int threads = 1;
};

// Per n <= n_max: the exact value when the strategy space fits the cutoff,
// otherwise a certified hill-climbing lower bound.  The lower bound never
// falls below val(g)^n (the baseline is always in the candidate pool).
std::vector<DecayPoint> decay_curve(const Game& g, int n_max, uint64_t seed,
                                    const DecayLimits& limits = {});

std::string strategy_digest(const ProductStrategy& s);

}  // namespace parrep
