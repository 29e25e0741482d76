#include "structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace parrep {

namespace {

// union-find with deterministic component output (sorted by smallest member)
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<int>> components(const std::vector<int>& members) {
    std::map<int, std::vector<int>> by_root;
    for (int m : members) by_root[find(m)].push_back(m);
    std::vector<std::vector<int>> out;
    for (auto& [root, mem] : by_root) {
      std::sort(mem.begin(), mem.end());
      out.push_back(std::move(mem));
    }
    return out;
  }
};

}  // namespace

SupportGraph connection_graph(const Game& g) {
  SupportGraph sg;
  for (const auto& [q, w] : g.support) sg.vertices.push_back(q);
  int n = static_cast<int>(sg.vertices.size());
  UnionFind uf(n);
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++) {
      int diff = 0;
      for (int p = 0; p < g.players; p++) diff += sg.vertices[i][p] != sg.vertices[j][p];
      if (diff == 1) {
        sg.edges.emplace_back(i, j);
        uf.unite(i, j);
      }
    }
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  sg.components = uf.components(all);
  return sg;
}

std::vector<PlayerGraph> playerwise_graphs(const Game& g) {
  std::vector<PlayerGraph> out;
  for (int j = 0; j < g.players; j++) {
    PlayerGraph pg;
    pg.player = j;
    // vertices are the questions that occur with positive probability
    // (questions never asked are dropped, matching the convention that a
    // game is considered after removing zero-probability questions)
    std::set<int> used;
    for (const auto& [q, w] : g.support) used.insert(q[j]);
    pg.vertices.assign(used.begin(), used.end());

    UnionFind uf(static_cast<int>(g.questions[j].size()));
    std::set<std::pair<int, int>> edges;
    int n = static_cast<int>(g.support.size());
    for (int a = 0; a < n; a++)
      for (int b = a + 1; b < n; b++) {
        const Tuple& x = g.support[a].first;
        const Tuple& y = g.support[b].first;
        if (x[j] == y[j]) continue;
        bool same_rest = true;
        for (int p = 0; p < g.players && same_rest; p++)
          if (p != j) same_rest = x[p] == y[p];
        if (same_rest) {
          edges.emplace(std::min(x[j], y[j]), std::max(x[j], y[j]));
          uf.unite(x[j], y[j]);
        }
      }
    pg.edges.assign(edges.begin(), edges.end());
    pg.components = uf.components(pg.vertices);
    out.push_back(std::move(pg));
  }
  return out;
}

const char* connectivity_name(Connectivity c) {
  switch (c) {
    case Connectivity::Connected: return "Connected";
    case Connectivity::PlayerwiseConnectedOnly: return "PlayerwiseConnectedOnly";
    case Connectivity::NotPlayerwiseConnected: return "NotPlayerwiseConnected";
  }
  return "unknown";
}

Connectivity classify_connectivity(const Game& g) {
  if (connection_graph(g).connected()) return Connectivity::Connected;
  for (const auto& pg : playerwise_graphs(g))
    if (!pg.connected()) return Connectivity::NotPlayerwiseConnected;
  return Connectivity::PlayerwiseConnectedOnly;
}

// --- cube symmetries ---------------------------------------------------------

std::vector<CubeSymmetry> all_cube_symmetries() {
  std::vector<CubeSymmetry> out;
  std::array<int, 3> perm = {0, 1, 2};
  do {
    for (int f = 0; f < 8; f++)
      out.push_back({perm, {f >> 2 & 1, f >> 1 & 1, f & 1}});
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end(), [](const CubeSymmetry& a, const CubeSymmetry& b) {
    return std::tie(a.perm, a.flip) < std::tie(b.perm, b.flip);
  });
  return out;
}

PointSet apply_symmetry(const CubeSymmetry& s, const PointSet& points) {
  PointSet out;
  for (int p : points) out.push_back(s.apply(p));
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<PointSet, CubeSymmetry> canonicalize_support(const PointSet& points) {
  if (points.empty()) fail(ErrorKind::bad_request, "/support", "empty point set");
  PointSet sorted = points;
  std::sort(sorted.begin(), sorted.end());
  std::optional<PointSet> best;
  CubeSymmetry witness;
  for (const CubeSymmetry& s : all_cube_symmetries()) {
    PointSet image = apply_symmetry(s, sorted);
    if (!best || image < *best) {
      best = image;
      witness = s;
    }
  }
  return {*best, witness};
}

const char* game_tag_name(GameTag t) {
  switch (t) {
    case GameTag::Connected: return "Connected";
    case GameTag::TwoPlayerReducible: return "TwoPlayerReducible";
    case GameTag::HammingWeightOne: return "HammingWeightOne";
    case GameTag::GhzSupport: return "GHZSupport";
    case GameTag::FourPointAnd: return "FourPointAND";
    case GameTag::FivePointPlayerwise: return "FivePointPlayerwise";
  }
  return "unknown";
}

PointSet support_points_binary3(const Game& g) {
  if (g.players != 3)
    fail(ErrorKind::unsupported, "/players", "classification needs a 3-player game");
  for (int j = 0; j < 3; j++)
    if (g.questions[j].size() != 2)
      fail(ErrorKind::unsupported, "/questions", "classification needs binary questions");
  PointSet points;
  for (const auto& [q, w] : g.support) points.push_back(q[0] * 4 + q[1] * 2 + q[2]);
  std::sort(points.begin(), points.end());
  return points;
}

PointSet canonical_hw1() { return canonicalize_support({4, 2, 1}).first; }
PointSet canonical_ghz() { return canonicalize_support({0, 3, 5, 6}).first; }
PointSet canonical_four_point() { return canonicalize_support({0, 2, 4, 7}).first; }
PointSet canonical_five_point() { return canonicalize_support({0, 1, 2, 4, 7}).first; }

GameClass classify_binary3(const Game& g) {
  PointSet points = support_points_binary3(g);

  // 1. bijective correspondence between two players' inputs; this captures
  //    every support of size <= 2 and the degenerate 3-point cases
  for (int p = 0; p < 3; p++)
    for (int q = p + 1; q < 3; q++) {
      int fwd[2] = {-1, -1}, bwd[2] = {-1, -1};
      bool ok = true;
      for (int pt : points) {
        int vp = pt >> (2 - p) & 1, vq = pt >> (2 - q) & 1;
        if (fwd[vp] == -1) fwd[vp] = vq;
        if (bwd[vq] == -1) bwd[vq] = vp;
        ok = ok && fwd[vp] == vq && bwd[vq] == vp;
      }
      if (ok) {
        GameClass c;
        c.tag = GameTag::TwoPlayerReducible;
        c.player_pair = {p, q};
        return c;
      }
    }

  // 2. connected support graph
  if (connection_graph(g).connected()) {
    GameClass c;
    c.tag = GameTag::Connected;
    return c;
  }

  // 3. canonical matching; the case analysis over disconnected,
  //    non-reducible supports of the cube admits exactly these four orbits
  auto [canon, sym] = canonicalize_support(points);
  GameClass c;
  c.symmetry = sym;
  c.canonical = canon;
  if (canon == canonical_hw1())
    c.tag = GameTag::HammingWeightOne;
  else if (canon == canonical_ghz())
    c.tag = GameTag::GhzSupport;
  else if (canon == canonical_four_point())
    c.tag = GameTag::FourPointAnd;
  else if (canon == canonical_five_point())
    c.tag = GameTag::FivePointPlayerwise;
  else
    fail(ErrorKind::internal_error, "/support",
         "support is disconnected, not reducible, and matches no canonical class");
  return c;
}

// --- hamming-weight-one case analysis ----------------------------------------

namespace {

Game flip_questions_binary3(const Game& g) {
  Game out = g;
  out.support.clear();
  for (const auto& [q, w] : g.support)
    out.support.emplace_back(Tuple{1 - q[0], 1 - q[1], 1 - q[2]}, w);
  std::sort(out.support.begin(), out.support.end());
  out.win.clear();
  for (const auto& [q, a] : g.win) out.win.emplace(Tuple{1 - q[0], 1 - q[1], 1 - q[2]}, a);
  return out;
}

// the three 2x2 tables of a normalized hamming-weight-one predicate:
// t[0](b,c) on query (1,0,0), t[1](a,c) on (0,1,0), t[2](a,b) on (0,0,1)
using Hw1Tables = std::array<std::array<std::array<int, 2>, 2>, 3>;

Hw1Tables extract_tables(const Game& g) {
  Hw1Tables t;
  for (int u = 0; u < 2; u++)
    for (int v = 0; v < 2; v++) {
      t[0][u][v] = g.wins({1, 0, 0}, {0, u, v});
      t[1][u][v] = g.wins({0, 1, 0}, {u, 0, v});
      t[2][u][v] = g.wins({0, 0, 1}, {u, v, 0});
    }
  return t;
}

// relabel players by perm (new player j is old player perm[j]) and flip
// answer bits, then re-extract the tables
Hw1Tables relabel_tables(const Game& g, const std::array<int, 3>& perm,
                         const std::array<int, 3>& aflip) {
  Game out = g;
  out.support.clear();
  out.win.clear();
  for (const auto& [q, w] : g.support) {
    Tuple nq(3);
    for (int j = 0; j < 3; j++) nq[j] = q[perm[j]];
    out.support.emplace_back(nq, w);
  }
  std::sort(out.support.begin(), out.support.end());
  for (const auto& [q, a] : g.win) {
    Tuple nq(3), na(3);
    for (int j = 0; j < 3; j++) {
      nq[j] = q[perm[j]];
      na[j] = a[perm[j]] ^ aflip[j];
    }
    out.win.emplace(nq, na);
  }
  return extract_tables(out);
}

bool tables_all_inequality(const Hw1Tables& t) {
  for (int i = 0; i < 3; i++)
    for (int u = 0; u < 2; u++)
      for (int v = 0; v < 2; v++)
        if (t[i][u][v] != (u != v ? 1 : 0)) return false;
  return true;
}

}  // namespace

Hw1Case hw1_binary_case(const Game& g) {
  if (g.players != 3) fail(ErrorKind::unsupported, "/players", "needs a 3-player game");
  for (int j = 0; j < 3; j++)
    if (g.questions[j].size() != 2 || g.answers[j].size() != 2)
      fail(ErrorKind::unsupported, "/", "needs binary questions and answers");

  PointSet points = support_points_binary3(g);
  Game game = g;
  bool flipped = false;
  if (points == PointSet{3, 5, 6}) {
    game = flip_questions_binary3(g);  // weight-2 presentation of the same support
    flipped = true;
  } else if (points != PointSet{1, 2, 4}) {
    fail(ErrorKind::bad_request, "/support", "support is not the hamming-weight-one set");
  }

  if (game_value(game).value == Rat(1))
    fail(ErrorKind::bad_request, "/", "no classification claimed for games of value 1");
  game = normalize_determined(game);
  Hw1Tables t = extract_tables(game);

  bool has_zero_line = false;
  for (int i = 0; i < 3 && !has_zero_line; i++)
    for (int u = 0; u < 2 && !has_zero_line; u++) {
      has_zero_line = (t[i][u][0] == 0 && t[i][u][1] == 0) ||  // row u
                      (t[i][0][u] == 0 && t[i][1][u] == 0);    // column u
    }

  Hw1Case result;
  result.question_flip = flipped;
  if (has_zero_line) {
    // find a relabeling placing an all-zero row at a = 1 of the third table
    result.case_id = 1;
    std::array<int, 3> perm = {0, 1, 2};
    std::vector<std::array<int, 3>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& p : perms)
      for (int f = 0; f < 8; f++) {
        std::array<int, 3> aflip = {f >> 2 & 1, f >> 1 & 1, f & 1};
        Hw1Tables rt = relabel_tables(game, p, aflip);
        if (rt[2][1][0] == 0 && rt[2][1][1] == 0) {
          CubeSymmetry cs;
          cs.perm = p;
          result.player_relabel = cs;
          result.answer_flips.flip = aflip;
          return result;
        }
      }
    fail(ErrorKind::internal_error, "/", "zero line exists but no relabeling exhibits it");
  }

  // every row and column carries a 1: the predicate must be the
  // anti-correlation inequality pattern up to answer-bit flips
  result.case_id = 2;
  for (int f = 0; f < 8; f++) {
    std::array<int, 3> aflip = {f >> 2 & 1, f >> 1 & 1, f & 1};
    Hw1Tables rt = relabel_tables(game, {0, 1, 2}, aflip);
    if (tables_all_inequality(rt)) {
      result.answer_flips.flip = aflip;
      return result;
    }
  }
  fail(ErrorKind::internal_error, "/",
       "value below 1 with full rows and columns must reduce to the anti-correlation game");
}

}  // namespace parrep
