// The non-signaling value of a game as an exact linear program.
//
// A non-signaling strategy is a family of conditional answer distributions
// p(a | x) over the FULL question product (not just the support), whose
// marginals on any proper subset of players depend only on that subset's
// questions.  The value of the game under p is the win probability with
// questions drawn from Q; the non-signaling value is the LP optimum.
//
// Verified game symmetries may be used to shrink the LP: an optimal solution
// can be averaged over a symmetry group, so it suffices to optimize over
// orbit-constant tables.  The returned witness is always expanded to the
// full table and re-checked exactly against every non-signaling constraint.
#pragma once

#include <cstdint>

#include "game.hpp"
#include "lp.hpp"

namespace parrep {

// A symmetry of a game: new player j reads old player perm[j], with per-new-
// player question/answer index relabelings.  Applying it to tuples preserves
// the query weights and the win set (checked by verify_symmetry).
struct GameSymmetry {
  std::vector<int> player_perm;
  std::vector<std::vector<int>> question_map;  // [new player][old question index]
  std::vector<std::vector<int>> answer_map;    // [new player][old answer index]

  Tuple apply_questions(const Tuple& x) const {
    Tuple out(x.size());
    for (std::size_t j = 0; j < x.size(); j++) out[j] = question_map[j][x[player_perm[j]]];
    return out;
  }
  Tuple apply_answers(const Tuple& a) const {
    Tuple out(a.size());
    for (std::size_t j = 0; j < a.size(); j++) out[j] = answer_map[j][a[player_perm[j]]];
    return out;
  }
};

bool verify_symmetry(const Game& g, const GameSymmetry& s);

// Player permutations that fix the game with identity relabelings, plus
// answer-bit flips on subsets of binary-answer players.  Every returned
// symmetry passes verify_symmetry.
std::vector<GameSymmetry> detect_symmetries(const Game& g);

// Symmetries of tensor_power(base, n): coordinate transpositions and
// per-coordinate lifts of pure answer relabelings of the base game.
// (Player permutations of the base act diagonally and are redetected on the
// repeated game itself.)
std::vector<GameSymmetry> tensor_symmetries(const Game& base, int n);

enum class NsMode { KMinusOne, AllSubsets };

struct NsStrategy {
  std::vector<int> question_radii;  // |X^j|
  std::vector<int> answer_radii;    // |A^j|
  std::vector<Rat> p;               // indexed by question rank * |A| + answer rank

  uint64_t answer_space() const {
    uint64_t n = 1;
    for (int r : answer_radii) n *= static_cast<uint64_t>(r);
    return n;
  }
  const Rat& at(const Tuple& x, const Tuple& a) const;
};

// exact feasibility check: distributions, and non-signaling marginals for
// every nonempty proper subset of players
bool verify_ns_strategy(const Game& g, const NsStrategy& s);

struct NsOptions {
  NsMode mode = NsMode::KMinusOne;
  bool use_symmetries = true;
  std::vector<GameSymmetry> extra;  // additional symmetries (verified before use)
  uint64_t max_variables = 200000;
};

LinearProgram build_ns_lp(const Game& g, NsMode mode = NsMode::KMinusOne,
                          uint64_t max_variables = 200000);

struct NsResult {
  Rat optimum;
  NsStrategy witness;
  std::size_t orbit_count = 0;  // LP variables actually solved for
  uint64_t pivots = 0;
};

NsResult ns_value(const Game& g, const NsOptions& options = {});

// ns_value of tensor_power(g, n), with the repetition symmetries attached.
NsResult ns_value_repeated(const Game& g, int n, const NsOptions& options = {});

}  // namespace parrep
