// Constructors for the named games: the anti-correlation game, GHZ and
// games on its support, the four-point AND support, the five-point
// playerwise-connected example, the canonical hamming-weight-one family G_k
// with its strategy translation, the restricted two-player game, and random
// 3-CNF games.
#pragma once

#include <cstdint>
#include <functional>

#include "game.hpp"

namespace parrep {

// Uniform queries on {(0,1,1),(1,0,1),(1,1,0)}; win iff xa + yb + zc = 1
// (the two players who receive 1 answer different bits).
Game anti_correlation();

// Weighted variant used in tests: same support and predicate, caller-chosen
// weights in support order (0,1,1), (1,0,1), (1,1,0).
Game anti_correlation_weighted(const Rat& w0, const Rat& w1, const Rat& w2);

// Global question-bit flip relating the weight-2 presentation of the
// anti-correlation support to the weight-1 presentation used in the
// hamming-weight-one analysis.  Valid for 3-player games with binary
// questions; answers are untouched.
Game flip_all_questions(const Game& g);

// Uniform queries on the even-parity triples; win iff a^b^c = x|y|z.
Game ghz_game();

// Any predicate on the GHZ support: v(x,y,z,a,b,c) with (x,y,z) even parity.
using Predicate3 = std::function<bool(int, int, int, int, int, int)>;
Game ghz_support_game(const Predicate3& v);

// Uniform queries on {(0,0,0),(1,0,0),(0,1,0),(1,1,1)} (z = x AND y).
Game four_point_and_game(const Predicate3& v);

// Uniform on {(0,0,0),(1,0,0),(0,1,0),(0,0,1),(1,1,1)}; win iff
// a+b+c = 1  <=>  x+y+z != 3.  Playerwise connected but not connected.
Game five_point_example();

// The canonical hamming-weight-one game G_k: questions uniform on
// {(1,0,0),(0,1,0),(0,0,1)}, answers A = B = {0,1}^k and C = [k]; win iff
//   (x,y,z) = (0,0,1):  a AND b = 0^k bitwise
//   (x,y,z) = (0,1,0):  a_c = 1
//   (x,y,z) = (1,0,0):  b_c = 1
Game hw1_canonical(int k);

// Strategy translation into G_k^(x)n for a hamming-weight-one game g whose
// predicate has been normalized so that on each query it only depends on the
// answers of the two players who receive 0.  Every input won by s in g^(x)n
// is won by the translated strategy in hw1_canonical(k)^(x)n, provided
// val(g) < 1.  k must be at least the size of every answer alphabet of g.
ProductStrategy translate_hw1_strategy(const Game& g, int k, int n, const ProductStrategy& s);

// The two-player restriction of a four-point AND game: queries uniform on
// {(0,0),(0,1),(1,0)}, answers A and B of the source game, and predicate
//   V((x,y,0),(a,b,c0)) AND (x=1 => a in a_set) AND (y=1 => b in b_set).
Game restricted_two_player(const Game& four_point, int c0, const std::vector<int>& a_set,
                           const std::vector<int>& b_set);

struct Literal {
  int variable = 0;  // 0-based
  bool negated = false;
};

struct CnfFormula {
  int variable_count = 0;
  std::vector<std::array<Literal, 3>> clauses;  // ordered triples, repeats allowed
};

// Samples m clauses independently and uniformly from all (2d)^3 ordered
// literal triples using the counter RNG stream of `seed`: clause r draws
// three literal codes u = below(2d) in position order; u < d is the positive
// literal on variable u, u >= d the negated literal on variable u - d.
CnfFormula random_3cnf(int d, int m, uint64_t seed);

// The 3-player game of a 3-CNF formula: player j's question is the variable
// in position j of a uniformly chosen clause, answers are truth values.
// Questions are variable triples; a question's weight is the fraction of
// clauses carrying that triple, and its win pairs are the assignments
// satisfying every such clause (the referee's clause identity is not part of
// the question, so simultaneous satisfaction is the faithful deterministic
// predicate; use cnf_value for the referee-averaged value).
Game cnf_game(const CnfFormula& f);

std::pair<CnfFormula, Game> random_3cnf_game(int d, int m, uint64_t seed);

// Exact referee-averaged value: max over per-position assignment functions
// of the fraction of clauses satisfied.  Exhausts (2^d)^3 strategy triples.
Rat cnf_value(const CnfFormula& f);

}  // namespace parrep
