#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "parrep.h"

namespace {

struct Str {
  char* s = nullptr;
  ~Str() { parrep_string_free(s); }
  std::string get() const { return s ? s : ""; }
};

struct GameH {
  parrep_game* g = nullptr;
  ~GameH() { parrep_game_free(g); }
};

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("version string") {
  CHECK(contains(parrep_version(), "parrep"));
  CHECK(contains(parrep_version(), "game-format"));
}

TEST_CASE("zoo games round-trip byte-identically") {
  for (const char* name : {"anti-correlation", "ghz", "five-point", "four-point-and", "hw1"}) {
    GameH g;
    Str err;
    REQUIRE(parrep_zoo_game(name, 2, &g.g, &err.s) == PARREP_OK);
    Str first;
    REQUIRE(parrep_game_render(g.g, &first.s) == PARREP_OK);
    GameH reparsed;
    Str err2;
    REQUIRE(parrep_game_parse(first.s, &reparsed.g, &err2.s) == PARREP_OK);
    Str second;
    REQUIRE(parrep_game_render(reparsed.g, &second.s) == PARREP_OK);
    CHECK(first.get() == second.get());
  }
}

TEST_CASE("canonical serialization golden: the anti-correlation game") {
  GameH g;
  Str err, out;
  REQUIRE(parrep_zoo_game("anti-correlation", 0, &g.g, &err.s) == PARREP_OK);
  REQUIRE(parrep_game_render(g.g, &out.s) == PARREP_OK);
  const std::string golden =
      "{\"answers\":[[\"0\",\"1\"],[\"0\",\"1\"],[\"0\",\"1\"]],\"players\":3,"
      "\"questions\":[[\"0\",\"1\"],[\"0\",\"1\"],[\"0\",\"1\"]],"
      "\"support\":[{\"q\":[\"0\",\"1\",\"1\"],\"w\":\"1/3\"},"
      "{\"q\":[\"1\",\"0\",\"1\"],\"w\":\"1/3\"},"
      "{\"q\":[\"1\",\"1\",\"0\"],\"w\":\"1/3\"}],"
      "\"win\":[{\"a\":[\"0\",\"0\",\"1\"],\"q\":[\"0\",\"1\",\"1\"]},"
      "{\"a\":[\"0\",\"1\",\"0\"],\"q\":[\"0\",\"1\",\"1\"]},"
      "{\"a\":[\"1\",\"0\",\"1\"],\"q\":[\"0\",\"1\",\"1\"]},"
      "{\"a\":[\"1\",\"1\",\"0\"],\"q\":[\"0\",\"1\",\"1\"]},"
      "{\"a\":[\"0\",\"0\",\"1\"],\"q\":[\"1\",\"0\",\"1\"]},"
      "{\"a\":[\"0\",\"1\",\"1\"],\"q\":[\"1\",\"0\",\"1\"]},"
      "{\"a\":[\"1\",\"0\",\"0\"],\"q\":[\"1\",\"0\",\"1\"]},"
      "{\"a\":[\"1\",\"1\",\"0\"],\"q\":[\"1\",\"0\",\"1\"]},"
      "{\"a\":[\"0\",\"1\",\"0\"],\"q\":[\"1\",\"1\",\"0\"]},"
      "{\"a\":[\"0\",\"1\",\"1\"],\"q\":[\"1\",\"1\",\"0\"]},"
      "{\"a\":[\"1\",\"0\",\"0\"],\"q\":[\"1\",\"1\",\"0\"]},"
      "{\"a\":[\"1\",\"0\",\"1\"],\"q\":[\"1\",\"1\",\"0\"]}]}\n";
  CHECK(out.get() == golden);
}

TEST_CASE("game value through the C API") {
  GameH g;
  Str err;
  REQUIRE(parrep_zoo_game("anti-correlation", 0, &g.g, &err.s) == PARREP_OK);
  Str out;
  REQUIRE(parrep_game_value(g.g, 0, 1, &out.s, &err.s) == PARREP_OK);
  CHECK(contains(out.get(), "\"value\":\"2/3\""));
}

TEST_CASE("error reporting carries kind and path") {
  GameH g;
  Str err;
  CHECK(parrep_game_parse("{\"players\": 3}", &g.g, &err.s) == PARREP_ERR_DOMAIN);
  CHECK(contains(err.get(), "\"kind\":\"bad_request\""));
  CHECK(contains(err.get(), "\"path\":"));

  Str err2;
  GameH bad;
  CHECK(parrep_game_parse("not json at all", &bad.g, &err2.s) == PARREP_ERR_DOMAIN);

  GameH anti;
  Str err3;
  REQUIRE(parrep_zoo_game("anti-correlation", 0, &anti.g, &err3.s) == PARREP_OK);
  Str out;
  Str err4;
  CHECK(parrep_game_value(anti.g, 5, 1, &out.s, &err4.s) == PARREP_ERR_DOMAIN);
  CHECK(contains(err4.get(), "\"kind\":\"budget_exceeded\""));

  CHECK(parrep_game_parse(nullptr, nullptr, nullptr) == PARREP_ERR_USAGE);
  GameH unknown;
  Str err5;
  CHECK(parrep_zoo_game("no-such-game", 0, &unknown.g, &err5.s) == PARREP_ERR_DOMAIN);
}

TEST_CASE("non-signaling invariance payload") {
  GameH g;
  Str err;
  REQUIRE(parrep_zoo_game("anti-correlation", 0, &g.g, &err.s) == PARREP_OK);
  Str out;
  REQUIRE(parrep_ns_invariance(g.g, 2, &out.s, &err.s) == PARREP_OK);
  CHECK(contains(out.get(), "\"base\":\"2/3\""));
  CHECK(contains(out.get(), "\"repeated\":\"2/3\""));
  CHECK(contains(out.get(), "\"equal\":true"));
}

TEST_CASE("classification payloads") {
  GameH five;
  Str err;
  REQUIRE(parrep_zoo_game("five-point", 0, &five.g, &err.s) == PARREP_OK);
  Str out;
  REQUIRE(parrep_classify(five.g, &out.s, &err.s) == PARREP_OK);
  CHECK(contains(out.get(), "\"tag\":\"FivePointPlayerwise\""));
  CHECK(contains(out.get(), "\"playerwise\":true"));
  CHECK(contains(out.get(), "\"connectivity\":\"PlayerwiseConnectedOnly\""));

  GameH ghz;
  Str out2;
  REQUIRE(parrep_zoo_game("ghz", 0, &ghz.g, &err.s) == PARREP_OK);
  REQUIRE(parrep_classify(ghz.g, &out2.s, &err.s) == PARREP_OK);
  CHECK(contains(out2.get(), "\"tag\":\"GHZSupport\""));
}

TEST_CASE("cnf experiment and game emission are deterministic") {
  Str a, b, err;
  REQUIRE(parrep_cnf_game(4, 20, 9, &a.s, &err.s) == PARREP_OK);
  REQUIRE(parrep_cnf_game(4, 20, 9, &b.s, &err.s) == PARREP_OK);
  CHECK(a.get() == b.get());
  CHECK(contains(a.get(), "\"formula\""));
  CHECK(contains(a.get(), "\"game\""));

  Str csv;
  REQUIRE(parrep_cnf_experiment(3, 9, 4, 0, 2, &csv.s, &err.s) == PARREP_OK);
  CHECK(contains(csv.get(), "seed,connected,playerwise_connected,value"));
  Str csv2;
  REQUIRE(parrep_cnf_experiment(3, 9, 4, 0, 1, &csv2.s, &err.s) == PARREP_OK);
  CHECK(csv.get() == csv2.get());  // thread count does not change rows
}

TEST_CASE("diagnostics payloads") {
  Str out, err;
  REQUIRE(parrep_diag_spaces(2, 1, 1000, &out.s, &err.s) == PARREP_OK);
  CHECK(contains(out.get(), "\"pair_table\""));
  CHECK(contains(out.get(), "\"coupling_matches_product\":true"));
  CHECK(contains(out.get(), "\"coupling_matches_pair_table\":true"));

  Str p;
  REQUIRE(parrep_diag_pinsker(5, 3, 50, &p.s, &err.s) == PARREP_OK);
  CHECK(contains(p.get(), "\"violations\":0"));

  GameH g;
  REQUIRE(parrep_zoo_game("anti-correlation", 0, &g.g, &err.s) == PARREP_OK);
  Str e;
  REQUIRE(parrep_diag_embedding(g.g, 2, 2, &e.s, &err.s) == PARREP_OK);
  CHECK(contains(e.get(), "\"average_l1\""));

  Str mc;
  std::string strategy =
      "[{\"0 0\":\"1 1\",\"0 1\":\"1 1\",\"1 0\":\"1 1\",\"1 1\":\"1 1\"},"
      "{\"0 0\":\"0 0\",\"0 1\":\"0 0\",\"1 0\":\"0 0\",\"1 1\":\"0 0\"},"
      "{\"0 0\":\"0 0\",\"0 1\":\"0 0\",\"1 0\":\"0 0\",\"1 1\":\"0 0\"}]";
  REQUIRE(parrep_mc_estimate(g.g, 2, strategy.c_str(), 20000, 5, 2, &mc.s, &err.s) == PARREP_OK);
  CHECK(contains(mc.get(), "\"estimate\":0.44"));
}

TEST_CASE("decay and search payloads") {
  GameH g;
  Str err;
  REQUIRE(parrep_zoo_game("anti-correlation", 0, &g.g, &err.s) == PARREP_OK);
  Str csv;
  REQUIRE(parrep_decay_curve(g.g, 2, 1, 0, 1, 1, &csv.s, &err.s) == PARREP_OK);
  CHECK(contains(csv.get(), "n,exact,lower_bound,method,witness_digest,runtime_ms"));
  CHECK(contains(csv.get(), "1,2/3,2/3,exhaustive"));
  CHECK(contains(csv.get(), "2,2/3,2/3,exhaustive"));

  Str search;
  REQUIRE(parrep_heuristic_search(g.g, 2, 20000, 7, 2, &search.s, &err.s) == PARREP_OK);
  CHECK(contains(search.get(), "\"lower_bound\":"));
  CHECK(contains(search.get(), "\"strategy\":"));
}
