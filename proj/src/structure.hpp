// Connectivity structure of games: the (k-1)-connection graph on support
// points, per-player projection graphs, cube-symmetry canonicalization of
// binary 3-player supports, the complete classifier for 3-player binary
// games, and the case analysis for hamming-weight-one games with binary
// outputs.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "game.hpp"

namespace parrep {

// Graph on support points; edge {x,y} iff the tuples differ in the question
// to exactly one player.
struct SupportGraph {
  std::vector<Tuple> vertices;                    // sorted support tuples
  std::vector<std::pair<int, int>> edges;         // index pairs, i < j
  std::vector<std::vector<int>> components;       // sorted by smallest vertex
  bool connected() const { return components.size() <= 1; }
};

// Projection on player j: vertices are that player's occurring questions,
// with an edge when two questions co-occur with a common tuple of the other
// players' questions.  Questions of zero probability are dropped, following
// the convention that they can be removed without affecting the game.
struct PlayerGraph {
  int player = 0;
  std::vector<int> vertices;                 // question indices, sorted
  std::vector<std::pair<int, int>> edges;    // question index pairs, i < j
  std::vector<std::vector<int>> components;
  bool connected() const { return components.size() <= 1; }
};

SupportGraph connection_graph(const Game& g);
std::vector<PlayerGraph> playerwise_graphs(const Game& g);

enum class Connectivity { Connected, PlayerwiseConnectedOnly, NotPlayerwiseConnected };
const char* connectivity_name(Connectivity c);
Connectivity classify_connectivity(const Game& g);

// --- binary 3-player cube machinery ---------------------------------------

// A symmetry of the cube {0,1}^3 acting on question triples: first permute
// players, then flip selected bits.  point -> flips ^ (permuted point).
struct CubeSymmetry {
  std::array<int, 3> perm = {0, 1, 2};   // output coordinate j reads input coordinate perm[j]
  std::array<int, 3> flip = {0, 0, 0};

  int apply(int point) const {  // points are 3-bit integers x*4 + y*2 + z
    int out = 0;
    for (int j = 0; j < 3; j++) {
      int bit = point >> (2 - perm[j]) & 1;
      out |= (bit ^ flip[j]) << (2 - j);
    }
    return out;
  }
};

std::vector<CubeSymmetry> all_cube_symmetries();  // all 48

using PointSet = std::vector<int>;  // sorted 3-bit integers

PointSet apply_symmetry(const CubeSymmetry& s, const PointSet& points);

// Lexicographically smallest image of the set over all 48 symmetries, with a
// witness symmetry attaining it.  Idempotent and constant on orbits.
std::pair<PointSet, CubeSymmetry> canonicalize_support(const PointSet& points);

enum class GameTag {
  Connected,
  TwoPlayerReducible,
  HammingWeightOne,
  GhzSupport,
  FourPointAnd,
  FivePointPlayerwise,
};
const char* game_tag_name(GameTag t);

struct GameClass {
  GameTag tag;
  // For the canonical-orbit tags: a symmetry mapping the input support onto
  // the canonical set of the tag.  For TwoPlayerReducible: the player pair.
  std::optional<CubeSymmetry> symmetry;
  std::optional<std::pair<int, int>> player_pair;
  PointSet canonical;  // the canonical set of the tag (empty for Connected)
};

// The decision tree behind the binary 3-player classification:
//   1. two players' inputs in bijective correspondence  -> TwoPlayerReducible
//      (covers every support of size <= 2 and the degenerate 3-point cases)
//   2. connection graph connected                       -> Connected
//   3. otherwise the canonical form of the support is exactly one of the
//      hamming-weight-one, GHZ, four-point AND or five-point sets.
// Anything else would contradict the case analysis, so it raises an
// internal error.  The class depends on the support alone; query weights
// are ignored (uniformize first if a uniform-distribution reading matters).
GameClass classify_binary3(const Game& g);

// support of a binary 3-player game as 3-bit integers
PointSet support_points_binary3(const Game& g);

// canonical reference sets (canonical forms of the named supports)
PointSet canonical_hw1();
PointSet canonical_ghz();
PointSet canonical_four_point();
PointSet canonical_five_point();

// --- hamming-weight-one case analysis --------------------------------------

// Per-player answer relabelings (bit flips) for binary-answer games.
struct AnswerFlips {
  std::array<int, 3> flip = {0, 0, 0};
};

struct Hw1Case {
  int case_id = 0;  // 1: an all-zero row/column exists; 2: anti-correlation form
  // Relabelings apply to the weight-1 presentation; question_flip records
  // whether the input arrived in the weight-2 presentation and was flipped.
  // Case 1: player permutation + answer flips after which V_3(a, b) <= [a = 0]
  // Case 2: answer flips after which V_1, V_2, V_3 all become 1[. != .]
  bool question_flip = false;
  std::optional<CubeSymmetry> player_relabel;  // perm only; flips stay 0
  AnswerFlips answer_flips;
};

// Requires: binary answers, support equal to {(1,0,0),(0,1,0),(0,0,1)} or its
// global question flip {(0,1,1),(1,0,1),(1,1,0)}, val(g) < 1.  The predicate
// is normalized with normalize_determined internally.
Hw1Case hw1_binary_case(const Game& g);

}  // namespace parrep
