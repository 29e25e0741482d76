// Core model of k-player games: question/answer alphabets, an exact rational
// query distribution, and a win predicate given as an explicit set of
// (question tuple, answer tuple) pairs.  All probabilities and values in this
// module are exact rationals; no floating point anywhere.
//
// Conventions used throughout:
//   - alphabets are stored sorted; symbols are addressed by index
//   - a question/answer tuple is a vector of per-player indices
//   - a product strategy is one answer table per player, indexed by question
//   - strategies are ordered by the concatenation of per-player answer tables
//     in question order ("strategy encoding"); `game_value` returns the
//     encoding-lexicographically smallest optimal strategy
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace parrep {

using Tuple = std::vector<int>;  // per-player symbol indices

struct Game {
  int players = 0;
  std::vector<std::vector<std::string>> questions;  // per player, sorted
  std::vector<std::vector<std::string>> answers;    // per player, sorted
  std::vector<std::pair<Tuple, Rat>> support;       // sorted by tuple, weights > 0, sum 1
  std::set<std::pair<Tuple, Tuple>> win;            // (question tuple, answer tuple)

  bool wins(const Tuple& q, const Tuple& a) const { return win.count({q, a}) != 0; }
  int question_index(int player, const std::string& symbol) const;
  int answer_index(int player, const std::string& symbol) const;
  std::optional<Rat> weight(const Tuple& q) const;
  friend bool operator==(const Game&, const Game&) = default;

  uint64_t question_space() const;  // |X^1| * ... * |X^k|
  uint64_t answer_space() const;    // |A^1| * ... * |A^k|
};

// Checks every invariant (weights positive and summing to 1, symbols inside
// their alphabets, nonempty support) and produces the canonical in-memory
// form: sorted alphabets, sorted support with zero-weight points stripped,
// deduplicated win set.  Alphabets and tuples arrive as raw symbol strings.
struct RawGame {
  int players = 0;
  std::vector<std::vector<std::string>> questions;
  std::vector<std::vector<std::string>> answers;
  std::vector<std::pair<std::vector<std::string>, std::string>> support;  // (tuple, weight)
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> win;
};
Game validate_game(const RawGame& raw);

struct ProductStrategy {
  // tables[j][question index] = answer index
  std::vector<std::vector<int>> tables;

  // Flat strategy encoding: per-player tables concatenated in player order,
  // questions in alphabet (lexicographic) order.
  std::vector<int> encoding() const;
  friend bool operator==(const ProductStrategy&, const ProductStrategy&) = default;
};

void check_strategy_shape(const Game& g, const ProductStrategy& s);

struct SearchLimits {
  uint64_t max_strategies = uint64_t(1) << 30;
  int threads = 1;
};

struct ValueResult {
  Rat value;
  ProductStrategy witness;
};

// Exact winning probability of a fixed strategy: sum of Q(x) over support
// points where the strategy's answers land in the win set.
Rat strategy_value(const Game& g, const ProductStrategy& s);

// Exact game value by branch-and-bound over all product strategies, with the
// partial-sum upper bound (accumulated win mass + undecided query mass).
// Deterministic: the witness is the encoding-smallest optimal strategy for
// any thread count.  Refuses when the nominal strategy count exceeds
// limits.max_strategies.
ValueResult game_value(const Game& g, const SearchLimits& limits = {});

struct TensorLimits {
  uint64_t max_alphabet = uint64_t(1) << 20;  // per-player question/answer space
  uint64_t max_support = uint64_t(1) << 20;
  uint64_t max_win_pairs = uint64_t(1) << 25;
};

// n-fold parallel repetition as a first-class Game.  Tuple symbols of the
// repeated game are the per-copy symbols joined with '|'.
Game tensor_power(const Game& g, int n, const TensorLimits& limits = {});

// An event E = E^1 x ... x E^k on the inputs of tensor_power(g, n); each
// E^j is a set of player-j question tuples given as per-copy index vectors.
struct ProductEvent {
  int copies = 1;
  std::vector<std::set<std::vector<int>>> sets;  // per player

  bool contains(int player, const std::vector<int>& q) const {
    return sets[player].count(q) != 0;
  }
};

// Checked constructor: verifies shape and positive probability under the
// product distribution of tensor_power(g, n).
ProductEvent make_product_event(const Game& g, int n,
                                std::vector<std::set<std::vector<int>>> sets);

// P(E) under the product distribution of tensor_power(g, n); exact.
Rat event_probability(const Game& g, int n, const ProductEvent& e);

// tensor_power(g, n) with the query distribution conditioned on E.
// Fails with zero_probability_event when P(E) = 0.
Game condition_game(const Game& g, int n, const ProductEvent& e, const TensorLimits& limits = {});

// Query distribution replaced by the uniform distribution over support(Q).
Game uniformize(const Game& g);

// Predicate normalization: for every player j and question q that occurs in
// exactly one support point y, the returned predicate takes the value
// max over the j-th answer of V(y, .), so it no longer depends on player j's
// answer at y.  Pairs (j, q) are processed in (player, question) order; the
// fixed point does not depend on that order (the explicit-order variant
// exists to assert exactly that).
Game normalize_determined(const Game& g);
Game normalize_determined_ordered(const Game& g, const std::vector<std::pair<int, int>>& order);

// --- repeated games without materializing tensor_power -------------------

// A strategy for tensor_power(g, n) evaluated against the base game + n.
// Question tuples of player j are indexed in mixed radix, most significant
// copy first (matching tensor_power's alphabet order).
Rat repeated_strategy_value(const Game& g, int n, const ProductStrategy& s);

// Pr over P of winning coordinate i (1-based) with strategy s for g^(x)n.
Rat coordinate_value(const Game& g, int n, int i, const ProductStrategy& s);

// Max over strategies of the i-th coordinate value; enumerates per-player
// maps (X^j)^(x)n -> A^j, so the budget binds quickly as n grows.
ValueResult coordinate_game_value(const Game& g, int n, int i, const SearchLimits& limits = {});

// --- shared small utilities ----------------------------------------------

uint64_t checked_pow(uint64_t base, uint64_t exp, uint64_t cap);  // min(base^exp, cap+1)

inline uint64_t tuple_rank(const Tuple& t, const std::vector<int>& radii) {
  uint64_t r = 0;
  for (std::size_t i = 0; i < t.size(); i++) r = r * radii[i] + t[i];
  return r;
}

std::vector<Tuple> all_tuples(const std::vector<int>& radii);

}  // namespace parrep
