#include "parrep.h"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <thread>

#include "json_io.hpp"
#include "lab.hpp"
#include "nonsignaling.hpp"
#include "structure.hpp"
#include "zoo.hpp"

using namespace parrep;

struct parrep_game {
  Game game;
};

namespace {

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** err, const DomainError& e) {
  if (err) *err = dup(dump_canonical(error_to_json(e)));
}

template <typename F>
int guarded(char** err, const F& f) {
  try {
    f();
    return PARREP_OK;
  } catch (const DomainError& e) {
    set_error(err, e);
    return PARREP_ERR_DOMAIN;
  } catch (const std::exception& e) {
    if (err) {
      DomainError internal(ErrorKind::internal_error, "/", e.what());
      set_error(err, internal);
    }
    return PARREP_ERR_DOMAIN;
  }
}

Json parse_payload(const char* text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorKind::bad_request, "/", "payload is not valid JSON");
  return j;
}

Json classify_json(const Game& g) {
  Json out;
  SupportGraph sg = connection_graph(g);
  Json components = Json::array();
  for (const auto& comp : sg.components) {
    Json c = Json::array();
    for (int v : comp) {
      Json tuple = Json::array();
      for (int j = 0; j < g.players; j++) tuple.push_back(g.questions[j][sg.vertices[v][j]]);
      c.push_back(tuple);
    }
    components.push_back(c);
  }
  out["components"] = components;
  bool playerwise = true;
  for (const auto& pg : playerwise_graphs(g)) playerwise = playerwise && pg.connected();
  out["playerwise"] = playerwise;
  out["connectivity"] = connectivity_name(classify_connectivity(g));

  bool binary3 = g.players == 3;
  for (int j = 0; binary3 && j < 3; j++) binary3 = g.questions[j].size() == 2;
  if (binary3) {
    GameClass c = classify_binary3(g);
    out["tag"] = game_tag_name(c.tag);
    if (c.player_pair) {
      out["witness"] = {{"players", {c.player_pair->first + 1, c.player_pair->second + 1}}};
    } else if (c.symmetry) {
      Json canon = Json::array();
      for (int p : c.canonical) canon.push_back(p);
      out["witness"] = {{"player_perm", {c.symmetry->perm[0] + 1, c.symmetry->perm[1] + 1,
                                         c.symmetry->perm[2] + 1}},
                        {"question_flips", {c.symmetry->flip[0], c.symmetry->flip[1],
                                            c.symmetry->flip[2]}},
                        {"canonical_points", canon}};
    } else {
      out["witness"] = nullptr;
    }
  } else {
    out["tag"] = out["connectivity"];
    out["witness"] = nullptr;
  }
  return out;
}

std::string rat_str(const Rat& r) { return r.str(); }

}  // namespace

extern "C" {

const char* parrep_version(void) { return "parrep 1.0.0 (game-format 1)"; }

void parrep_string_free(char* s) { std::free(s); }

void parrep_game_free(parrep_game* g) { delete g; }

int parrep_game_parse(const char* json, parrep_game** out, char** err) {
  if (!json || !out) return PARREP_ERR_USAGE;
  return guarded(err, [&] {
    Json j = parse_payload(json);
    // accept envelopes like the cnf output, which wrap the game document
    if (j.is_object() && j.contains("game") && !j.contains("players")) j = j.at("game");
    Game g = game_from_json(j);
    *out = new parrep_game{std::move(g)};
  });
}

int parrep_game_render(const parrep_game* g, char** out) {
  if (!g || !out) return PARREP_ERR_USAGE;
  *out = dup(dump_canonical(game_to_json(g->game)));
  return PARREP_OK;
}

int parrep_zoo_game(const char* name, int k, parrep_game** out, char** err) {
  if (!name || !out) return PARREP_ERR_USAGE;
  return guarded(err, [&] {
    std::string id = name;
    Game g;
    if (id == "anti-correlation")
      g = anti_correlation();
    else if (id == "ghz")
      g = ghz_game();
    else if (id == "five-point")
      g = five_point_example();
    else if (id == "four-point-and")
      g = four_point_and_game(
          [](int, int, int z, int a, int b, int c) { return a == z && b == z && c == z; });
    else if (id == "hw1")
      g = hw1_canonical(k);
    else
      fail(ErrorKind::bad_request, "/name", "unknown zoo game '" + id + "'");
    *out = new parrep_game{std::move(g)};
  });
}

int parrep_tensor_power(const parrep_game* g, int n, parrep_game** out, char** err) {
  if (!g || !out) return PARREP_ERR_USAGE;
  return guarded(err, [&] { *out = new parrep_game{tensor_power(g->game, n)}; });
}

int parrep_game_value(const parrep_game* g, uint64_t max_strategies, int threads, char** out,
                      char** err) {
  if (!g || !out) return PARREP_ERR_USAGE;
  return guarded(err, [&] {
    SearchLimits limits;
    if (max_strategies > 0) limits.max_strategies = max_strategies;
    limits.threads = threads > 0 ? threads : 1;
    ValueResult res = game_value(g->game, limits);
    Json j;
    j["value"] = rat_str(res.value);
    j["strategy"] = strategy_to_json(g->game, res.witness);
    *out = dup(dump_canonical(j));
  });
}

int parrep_ns_value(const parrep_game* g, int all_subsets, int use_symmetries, char** out,
                    char** err) {
  if (!g || !out) return PARREP_ERR_USAGE;
  return guarded(err, [&] {
    NsOptions opts;
    opts.mode = all_subsets ? NsMode::AllSubsets : NsMode::KMinusOne;
    opts.use_symmetries = use_symmetries != 0;
    NsResult res = ns_value(g->game, opts);
    Json witness;
    witness["question_radii"] = res.witness.question_radii;
    witness["answer_radii"] = res.witness.answer_radii;
    Json table = Json::array();
    for (const Rat& v : res.witness.p) table.push_back(v.str());
    witness["p"] = table;
    Json j;
    j["optimum"] = rat_str(res.optimum);
    j["witness"] = witness;
    j["orbits"] = res.orbit_count;
    j["pivots"] = res.pivots;
    *out = dup(dump_canonical(j));
  });
}

int parrep_ns_invariance(const parrep_game* g, int n, char** out, char** err) {
  if (!g || !out) return PARREP_ERR_USAGE;
  return guarded(err, [&] {
    NsResult base = ns_value(g->game);
    NsResult repeated = ns_value_repeated(g->game, n);
    Json j;
    j["base"] = rat_str(base.optimum);
    j["repeated"] = rat_str(repeated.optimum);
    j["n"] = n;
    j["equal"] = base.optimum == repeated.optimum;
    *out = dup(dump_canonical(j));
  });
}

int parrep_classify(const parrep_game* g, char** out, char** err) {
  if (!g || !out) return PARREP_ERR_USAGE;
  return guarded(err, [&] { *out = dup(dump_canonical(classify_json(g->game))); });
}

int parrep_heuristic_search(const parrep_game* g, int n, uint64_t budget, uint64_t seed,
                            int threads, char** out, char** err) {
  if (!g || !out) return PARREP_ERR_USAGE;
  return guarded(err, [&] {
    HeuristicResult res =
        heuristic_value_search(g->game, n, budget, seed, threads > 0 ? threads : 1);
    Json j;
    j["lower_bound"] = rat_str(res.lower_bound);
    j["strategy"] = repeated_strategy_to_json(g->game, n, res.witness);
    j["evaluations"] = res.evaluations;
    j["restarts"] = res.restarts;
    *out = dup(dump_canonical(j));
  });
}

int parrep_mc_estimate(const parrep_game* g, int n, const char* strategy_json, uint64_t trials,
                       uint64_t seed, int threads, char** out, char** err) {
  if (!g || !out || !strategy_json) return PARREP_ERR_USAGE;
  return guarded(err, [&] {
    ProductStrategy s = repeated_strategy_from_json(g->game, n, parse_payload(strategy_json));
    McEstimate e = mc_win_estimate(g->game, n, s, trials, seed, threads > 0 ? threads : 1);
    Json j;
    j["estimate"] = e.estimate;
    j["radius"] = e.radius;
    j["wins"] = e.wins;
    j["trials"] = e.trials;
    *out = dup(dump_canonical(j));
  });
}

int parrep_decay_curve(const parrep_game* g, int n_max, uint64_t seed, uint64_t heuristic_budget,
                       int threads, int csv, char** out, char** err) {
  if (!g || !out) return PARREP_ERR_USAGE;
  return guarded(err, [&] {
    DecayLimits limits;
    if (heuristic_budget > 0) limits.heuristic_budget = heuristic_budget;
    limits.threads = threads > 0 ? threads : 1;
    auto curve = decay_curve(g->game, n_max, seed, limits);
    if (csv) {
      std::ostringstream os;
      os << "n,exact,lower_bound,method,witness_digest,runtime_ms\n";
      for (const auto& pt : curve)
        os << pt.n << ',' << (pt.exact ? pt.exact->str() : "") << ',' << pt.lower_bound.str()
           << ',' << pt.method << ',' << pt.witness_digest << ',' << pt.runtime_ms << "\n";
      *out = dup(os.str());
    } else {
      Json arr = Json::array();
      for (const auto& pt : curve) {
        Json j;
        j["n"] = pt.n;
        j["exact"] = pt.exact ? Json(pt.exact->str()) : Json(nullptr);
        j["lower_bound"] = pt.lower_bound.str();
        j["method"] = pt.method;
        j["witness_digest"] = pt.witness_digest;
        j["runtime_ms"] = pt.runtime_ms;
        arr.push_back(j);
      }
      *out = dup(dump_canonical(arr));
    }
  });
}

int parrep_cnf_game(int d, int m, uint64_t seed, char** out, char** err) {
  if (!out) return PARREP_ERR_USAGE;
  return guarded(err, [&] {
    auto [formula, game] = random_3cnf_game(d, m, seed);
    Json clauses = Json::array();
    for (const auto& clause : formula.clauses) {
      Json c = Json::array();
      for (const auto& lit : clause)
        c.push_back({{"v", lit.variable + 1}, {"neg", lit.negated}});
      clauses.push_back(c);
    }
    Json j;
    j["formula"] = {{"d", d}, {"m", m}, {"seed", seed}, {"clauses", clauses}};
    j["game"] = game_to_json(game);
    *out = dup(dump_canonical(j));
  });
}

int parrep_cnf_experiment(int d, int m, int seeds, uint64_t seed0, int threads, char** out,
                          char** err) {
  if (!out) return PARREP_ERR_USAGE;
  return guarded(err, [&] {
    if (seeds < 1) fail(ErrorKind::bad_request, "/seeds", "need at least one seed");
    struct RowData {
      uint64_t seed;
      bool connected;
      bool playerwise;
      std::string value;
    };
    std::vector<RowData> rows(seeds);
    std::atomic<int> next{0};
    int workers = std::max(1, threads);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; w++)
      pool.emplace_back([&]() {
        for (;;) {
          int i = next.fetch_add(1);
          if (i >= seeds) return;
          uint64_t seed = seed0 + static_cast<uint64_t>(i);
          auto [formula, game] = random_3cnf_game(d, m, seed);
          Connectivity c = classify_connectivity(game);
          rows[i].seed = seed;
          rows[i].connected = c == Connectivity::Connected;
          rows[i].playerwise = c != Connectivity::NotPlayerwiseConnected;
          if (d <= 6) rows[i].value = cnf_value(formula).str();
        }
      });
    for (auto& th : pool) th.join();

    std::ostringstream os;
    os << "seed,connected,playerwise_connected,value\n";
    for (const auto& r : rows)
      os << r.seed << ',' << (r.connected ? 1 : 0) << ',' << (r.playerwise ? 1 : 0) << ','
         << r.value << "\n";
    *out = dup(os.str());
  });
}

int parrep_diag_spaces(int n, uint64_t seed, uint64_t samples, char** out, char** err) {
  if (!out) return PARREP_ERR_USAGE;
  return guarded(err, [&] {
    auto p_atoms = space_p_atoms();
    auto c_atoms = space_c_atoms();

    Json j;
    Dist xxt = space_joint(p_atoms, 1, {kPx, kPxt}, 6);
    j["pair_table"] = {{"00", xxt[{0, 0}].str()},
                      {"01", xxt[{0, 1}].str()},
                      {"10", xxt[{1, 0}].str()},
                      {"11", xxt[{1, 1}].str()}};
    int cap = std::max(1, std::min(n, 4));
    j["n"] = cap;
    j["coupling_matches_pair_table"] =
        space_joint(c_atoms, cap, {kCx, kCxt}, 4) == space_joint(p_atoms, cap, {kPx, kPxt}, 6);
    Dist c_q = space_joint(c_atoms, cap, {kCxt, kCyt, kCzt}, 4);
    Dist p_q = space_joint(p_atoms, cap, {kPxt, kPy, kPzt}, 6);
    j["coupling_matches_product"] = c_q == p_q;

    if (samples > 0) {
      uint64_t s_hits = 0;
      for (uint64_t t = 0; t < samples; t++) {
        SpaceSample smp = space_c_sample(1, seed, t);
        s_hits += smp.coords[0][kCs];
      }
      j["s_rate"] = static_cast<double>(s_hits) / static_cast<double>(samples);
      j["samples"] = samples;
    }
    *out = dup(dump_canonical(j));
  });
}

int parrep_diag_pinsker(int max_n, uint64_t seed, int trials, char** out, char** err) {
  if (!out) return PARREP_ERR_USAGE;
  return guarded(err, [&] {
    if (max_n < 1 || max_n > 8) fail(ErrorKind::bad_request, "/n", "need 1 <= n <= 8");
    if (trials < 1) fail(ErrorKind::bad_request, "/trials", "need at least one trial");
    CounterRng rng(seed);
    int violations = 0;
    double max_ratio = 0;
    for (int t = 0; t < trials; t++) {
      int n = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_n)));
      ProductDistribution pd;
      uint64_t space = 1;
      for (int i = 0; i < n; i++) {
        int size = 2 + static_cast<int>(rng.below(3));
        std::vector<long> raw;
        long total = 0;
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
    Json j;
    j["trials"] = trials;
    j["violations"] = violations;
    j["max_ratio"] = max_ratio;
    *out = dup(dump_canonical(j));
  });
}

int parrep_diag_embedding(const parrep_game* g, int n, int pin_players, char** out, char** err) {
  if (!g || !out) return PARREP_ERR_USAGE;
  return guarded(err, [&] {
    const Game& game = g->game;
    if (pin_players < 0 || pin_players > game.players)
      fail(ErrorKind::bad_request, "/pin", "pin count out of range");

    Json arr = Json::array();
    for (int t = 0; t <= pin_players; t++) {
      // E pins the first coordinate of players 0..t-1 to their question in
      // the first support point; remaining players are unconstrained
      ProductEvent e;
      e.copies = n;
      e.sets.resize(game.players);
      for (int j = 0; j < game.players; j++) {
        std::vector<int> radii(n, static_cast<int>(game.questions[j].size()));
        for (const auto& tuple : all_tuples(radii)) {
          if (j < t && tuple[0] != game.support[0].first[j]) continue;
          e.sets[j].insert(tuple);
        }
      }
      DiagnosticReport rep = l1_embedding_diagnostic(game, n, e);
      Json item;
      item["pinned_players"] = t;
      Json per_coord = Json::array();
      for (const Rat& d : rep.per_coordinate) per_coord.push_back(d.str());
      item["per_coordinate_l1"] = per_coord;
      item["average_l1"] = rep.average.str();
      Json per_player = Json::array();
      for (const Rat& d : rep.per_player_average) per_player.push_back(d.str());
      item["per_player_average_l1"] = per_player;
      item["inv_event_probability"] = rep.inv_event_probability.str();
      item["log2_inv_event_probability"] = rep.log2_inv_event_probability;
      arr.push_back(item);
    }
    *out = dup(dump_canonical(arr));
  });
}

}  // extern "C"
