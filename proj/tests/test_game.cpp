#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "game.hpp"
#include "json_io.hpp"
#include "oracles.hpp"
#include "rng.hpp"
#include "zoo.hpp"

using namespace parrep;

namespace {

ProductStrategy constant_strategy(const Game& g, int answer) {
  ProductStrategy s;
  for (int j = 0; j < g.players; j++)
    s.tables.emplace_back(g.questions[j].size(), answer);
  return s;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const DomainError& e) {
    return e.kind();
  }
  FAIL("expected a DomainError");
  return ErrorKind::internal_error;
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
  CHECK(Rat::parse("2/6")->str() == "1/3");
  CHECK(Rat::parse("-4/6")->str() == "-2/3");
  CHECK(Rat::parse("7")->str() == "7");
  CHECK(Rat(2, 6) == Rat(1, 3));
  CHECK(!Rat::parse("1/0").has_value());
  CHECK(!Rat::parse("a/b").has_value());
  CHECK(!Rat::parse("1/2/3").has_value());
  CHECK((Rat(1, 3) + Rat(1, 6)).str() == "1/2");
  CHECK((Rat(2, 3) * Rat(3, 4)).str() == "1/2");
}

TEST_CASE("counter rng reproduces the splitmix64 reference stream") {
  CounterRng r(0);
  CHECK(r.next() == 0xE220A8397B1DCDAFull);  // splitmix64 from seed 0
  CHECK(r.next() == 0x6E789E6AA1B965F4ull);
  CounterRng again(0);
  CHECK(again.next() == 0xE220A8397B1DCDAFull);
  CHECK(r.substream(7).key == again.substream(7).key);
  CHECK(r.substream(7).key != r.substream(8).key);

  CounterRng draw(42);
  for (int i = 0; i < 1000; i++) CHECK(draw.below(7) < 7);
  CHECK(draw.below(1) == 0);
  CounterRng z(9);
  mpz_class big("123456789123456789123456789");
  for (int i = 0; i < 10; i++) CHECK(z.below_mpz(big) < big);
}

TEST_CASE("validate_game accepts the anti-correlation description") {
  Game g = anti_correlation();
  CHECK(g.support.size() == 3);
  for (const auto& [q, w] : g.support) CHECK(w == Rat(1, 3));
}

TEST_CASE("validate_game reports a bad weight sum") {
  RawGame raw;
  raw.players = 1;
  raw.questions = {{"0", "1", "2"}};
  raw.answers = {{"0"}};
  raw.support = {{{"0"}, "1/2"}, {{"1"}, "1/2"}, {{"2"}, "1/6"}};
  try {
    validate_game(raw);
    FAIL("expected an error");
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::invalid_weight_sum);
    CHECK(std::string(e.what()).find("weights sum to 7/6") != std::string::npos);
    CHECK(e.path() == "/support");
  }
}

TEST_CASE("validate_game: single-point support with V == 1 is a valid game of value 1") {
  RawGame raw;
  raw.players = 2;
  raw.questions = {{"q"}, {"q"}};
  raw.answers = {{"a", "b"}, {"a", "b"}};
  raw.support = {{{"q", "q"}, "1"}};
  for (const char* a : {"a", "b"})
    for (const char* b : {"a", "b"}) raw.win.push_back({{"q", "q"}, {a, b}});
  Game g = validate_game(raw);
  CHECK(game_value(g).value == Rat(1));
}

TEST_CASE("validate_game strips zero-weight support points") {
  RawGame raw;
  raw.players = 1;
  raw.questions = {{"0", "1"}};
  raw.answers = {{"0"}};
  raw.support = {{{"0"}, "1"}, {{"1"}, "0"}};
  Game g = validate_game(raw);
  CHECK(g.support.size() == 1);
}

TEST_CASE("validate_game rejects symbols outside the declared alphabets") {
  RawGame raw;
  raw.players = 1;
  raw.questions = {{"0"}};
  raw.answers = {{"0"}};
  raw.support = {{{"2"}, "1"}};
  CHECK(kind_of([&] { validate_game(raw); }) == ErrorKind::symbol_out_of_alphabet);

  raw.support = {{{"0"}, "1"}};
  raw.win = {{{"0"}, {"9"}}};
  CHECK(kind_of([&] { validate_game(raw); }) == ErrorKind::symbol_out_of_alphabet);

  raw.win = {};
  raw.support = {{{"0"}, "0"}};
  CHECK(kind_of([&] { validate_game(raw); }) == ErrorKind::invalid_weight_sum);
  raw.support = {};
  CHECK(kind_of([&] { validate_game(raw); }) == ErrorKind::invalid_weight_sum);
}

TEST_CASE("strategy_value on the anti-correlation game") {
  Game g = anti_correlation();

  // all players always answer 0: equal outputs never win
  CHECK(strategy_value(g, constant_strategy(g, 0)) == Rat(0));

  // player 1 answers 1, players 2 and 3 answer 0
  ProductStrategy s = constant_strategy(g, 0);
  s.tables[0] = {1, 1};
  CHECK(strategy_value(g, s) == Rat(2, 3));
}

TEST_CASE("strategy_value on the GHZ game matches direct predicate enumeration") {
  Game g = ghz_game();
  // sanity: the win set is exactly a^b^c = x|y|z on the even-parity support
  int pairs = 0;
  for (int x = 0; x < 2; x++)
    for (int y = 0; y < 2; y++)
      for (int z = 0; z < 2; z++) {
        if ((x ^ y ^ z) != 0) continue;
        for (int a = 0; a < 2; a++)
          for (int b = 0; b < 2; b++)
            for (int c = 0; c < 2; c++) {
              bool want = (a ^ b ^ c) == (x | y | z);
              CHECK(g.wins({x, y, z}, {a, b, c}) == want);
              pairs += want;
            }
      }
  CHECK(static_cast<int>(g.win.size()) == pairs);

  // all players answer 0: wins only on (0,0,0)
  CHECK(strategy_value(g, constant_strategy(g, 0)) == Rat(1, 4));
}

TEST_CASE("game_value: exact anchors and oracle agreement") {
  auto [anti_oracle, anti_best] = oracles::naive_game_value(anti_correlation());
  CHECK(anti_oracle == Rat(2, 3));
  auto anti = game_value(anti_correlation());
  CHECK(anti.value == Rat(2, 3));
  CHECK(anti.witness == anti_best);
  CHECK(strategy_value(anti_correlation(), anti.witness) == anti.value);

  auto [ghz_oracle, ghz_best] = oracles::naive_game_value(ghz_game());
  CHECK(ghz_oracle == Rat(3, 4));
  auto ghz = game_value(ghz_game());
  CHECK(ghz.value == Rat(3, 4));
  CHECK(ghz.witness == ghz_best);
}

TEST_CASE("game_value is deterministic across worker counts") {
  Game g = ghz_game();
  auto one = game_value(g, {.threads = 1});
  auto three = game_value(g, {.threads = 3});
  auto eight = game_value(g, {.threads = 8});
  CHECK(one.value == three.value);
  CHECK(one.witness == three.witness);
  CHECK(one.value == eight.value);
  CHECK(one.witness == eight.witness);
}

TEST_CASE("game_value refuses oversized strategy spaces") {
  Game g = anti_correlation();
  CHECK(kind_of([&] { game_value(g, {.max_strategies = 10}); }) == ErrorKind::budget_exceeded);
}

TEST_CASE("tensor_power(g, 1) is the identity") {
  for (const Game& g : {anti_correlation(), ghz_game(), five_point_example()})
    CHECK(tensor_power(g, 1) == g);
}

TEST_CASE("tensor_power of the anti-correlation game, n = 2") {
  Game g2 = tensor_power(anti_correlation(), 2);
  CHECK(g2.support.size() == 9);
  for (const auto& [q, w] : g2.support) CHECK(w == Rat(1, 9));

  auto res = game_value(g2);
  CHECK(res.value >= Rat(4, 9));
  auto [oracle, oracle_best] = oracles::naive_game_value(g2);
  CHECK(res.value == oracle);
  CHECK(res.witness == oracle_best);
  // the three-fold value is 2/3, so by monotonicity the two-fold value is too
  CHECK(res.value == Rat(2, 3));
}

TEST_CASE("tensor_power refuses oversized products") {
  CHECK(kind_of([&] { tensor_power(anti_correlation(), 99); }) == ErrorKind::budget_exceeded);
}

TEST_CASE("coordinate_value basics") {
  Game g = anti_correlation();

  // n = 1: coordinate value is the strategy value
  ProductStrategy opt = constant_strategy(g, 0);
  opt.tables[0] = {1, 1};
  CHECK(coordinate_value(g, 1, 1, opt) == strategy_value(g, opt));

  // n = 2, independent repetition of the optimum: each coordinate is 2/3
  ProductStrategy rep;
  // answers are (a1 a2) ranks; player 1 answers 1 in both copies -> rank 3
  rep.tables = {{3, 3, 3, 3}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  CHECK(coordinate_value(g, 2, 1, rep) == Rat(2, 3));
  CHECK(coordinate_value(g, 2, 2, rep) == Rat(2, 3));
  CHECK(repeated_strategy_value(g, 2, rep) == Rat(4, 9));

  // player 1's coordinate-2 answer copies its coordinate-1 input
  ProductStrategy copycat = rep;
  // question ranks for player 1: 0=(0 0), 1=(0 1), 2=(1 0), 3=(1 1)
  // answer rank = 2*a1 + a2 with a1 = 1, a2 = x1
  copycat.tables[0] = {2, 2, 3, 3};
  Rat direct;
  const auto& sup = g.support;
  for (std::size_t i = 0; i < sup.size(); i++)
    for (std::size_t j = 0; j < sup.size(); j++) {
      // copy 1 is support point i, copy 2 is support point j
      int x1 = sup[i].first[0];
      int a = x1;  // player 1's coordinate-2 answer
      int b = 0, c = 0;
      const Tuple& q = sup[j].first;
      if (q[0] * a + q[1] * b + q[2] * c == 1) direct += sup[i].second * sup[j].second;
    }
  CHECK(coordinate_value(g, 2, 2, copycat) == direct);

  CHECK(kind_of([&] { coordinate_value(g, 2, 3, rep); }) == ErrorKind::index_out_of_range);
}

TEST_CASE("coordinate_game_value at n = 1 equals game_value") {
  for (const Game& g : {anti_correlation(), ghz_game()}) {
    auto direct = game_value(g);
    auto coord = coordinate_game_value(g, 1, 1);
    CHECK(coord.value == direct.value);
  }
}

TEST_CASE("coordinate_game_value at n = 2 still equals the base value") {
  Game g = anti_correlation();
  auto coord = coordinate_game_value(g, 2, 2);
  CHECK(coord.value == Rat(2, 3));
}

TEST_CASE("condition_game") {
  Game g = anti_correlation();

  ProductEvent full;
  full.copies = 2;
  full.sets.resize(3);
  for (int j = 0; j < 3; j++)
    for (int u = 0; u < 2; u++)
      for (int v = 0; v < 2; v++) full.sets[j].insert({u, v});
  CHECK(event_probability(g, 2, full) == Rat(1));
  Game conditioned = condition_game(g, 2, full);
  CHECK(conditioned == tensor_power(g, 2));

  // E^1 = {x : x_1 = 1}, other players unconstrained
  ProductEvent e = full;
  e.sets[0] = {{1, 0}, {1, 1}};
  // player 1's marginal has x = 1 with probability 2/3, independently per copy
  CHECK(event_probability(g, 2, e) == Rat(2, 3));
  Game cond = condition_game(g, 2, e);
  Rat total;
  for (const auto& [q, w] : cond.support) total += w;
  CHECK(total == Rat(1));
  // Bayes by hand over the 9 points: surviving points are those whose copy-1
  // x-component is 1, each with weight (1/9)/(2/3) = 1/6
  CHECK(cond.support.size() == 6);
  for (const auto& [q, w] : cond.support) CHECK(w == Rat(1, 6));

  // two evaluation routes: conditioned value * P(E) = Pr[win and E]
  ProductStrategy rep;
  rep.tables = {{3, 3, 3, 3}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  Rat direct;
  for (std::size_t i = 0; i < g.support.size(); i++)
    for (std::size_t j = 0; j < g.support.size(); j++) {
      if (!(g.support[i].first[0] == 1)) continue;  // E
      bool win1 = g.support[i].first[0] * 1 == 1;   // player 1 answers 1, others 0
      bool win2 = g.support[j].first[0] * 1 == 1;
      if (win1 && win2) direct += g.support[i].second * g.support[j].second;
    }
  CHECK(strategy_value(cond, rep) * event_probability(g, 2, e) == direct);

  // zero-probability event: E^1 empty misses player 1's marginal support
  ProductEvent dead = full;
  dead.sets[0] = {};
  CHECK(kind_of([&] { condition_game(g, 2, dead); }) == ErrorKind::zero_probability_event);
}

TEST_CASE("uniformize") {
  Game g = anti_correlation();
  CHECK(uniformize(g) == g);

  Game weighted = anti_correlation_weighted(Rat(1, 2), Rat(1, 4), Rat(1, 4));
  Game u = uniformize(weighted);
  for (const auto& [q, w] : u.support) CHECK(w == Rat(1, 3));
  CHECK(u == g);
  CHECK(uniformize(u) == u);

  // val < 1 is preserved in both directions
  CHECK(game_value(weighted).value < Rat(1));
  CHECK(game_value(u).value < Rat(1));
  Game winnable = anti_correlation_weighted(Rat(1, 2), Rat(1, 2), Rat(0));
  // with only two support points a strategy can win both
  CHECK(game_value(winnable).value == Rat(1));
  CHECK(game_value(uniformize(winnable)).value == Rat(1));
}

TEST_CASE("normalize_determined") {
  // anti-correlation: the 0-player's answer already does not matter
  Game g = anti_correlation();
  CHECK(normalize_determined(g) == g);

  // GHZ: every question occurs in two support points, nothing determines
  Game ghz = ghz_game();
  CHECK(normalize_determined(ghz) == ghz);

  // four-point AND support: on (1,1,1), player 3's input determines the
  // query, so V' there ignores player 3's answer; the value is unchanged
  Game fp = four_point_and_game([](int x, int y, int z, int a, int b, int c) {
    return a == z && b == z && c == z;  // "all players output z"
  });
  Game norm = normalize_determined(fp);
  CHECK(game_value(norm).value == game_value(fp).value);
  for (int a = 0; a < 2; a++)
    for (int b = 0; b < 2; b++) CHECK(norm.wins({1, 1, 1}, {a, b, 0}) == norm.wins({1, 1, 1}, {a, b, 1}));

  // idempotent
  CHECK(normalize_determined(norm) == norm);

  // V <= V' pointwise: no strategy loses value
  std::vector<int> radii(6, 2);
  for (const auto& flat : all_tuples(radii)) {
    ProductStrategy s;
    s.tables = {{flat[0], flat[1]}, {flat[2], flat[3]}, {flat[4], flat[5]}};
    CHECK(strategy_value(fp, s) <= strategy_value(norm, s));
  }

  // processing order does not change the fixed point
  std::vector<std::pair<int, int>> order;
  for (int j = 0; j < 3; j++)
    for (int q = 0; q < 2; q++) order.emplace_back(j, q);
  std::mt19937 shuffle_rng(123);
  for (int trial = 0; trial < 10; trial++) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    CHECK(normalize_determined_ordered(fp, order) == norm);
  }
}

TEST_CASE("monotonicity and supermultiplicativity at n = 2") {
  std::vector<Game> zoo = {anti_correlation(), ghz_game(), five_point_example(),
                           four_point_and_game([](int, int, int, int a, int b, int c) {
                             return a == 0 && b == 0 && c == 0;
                           })};
  for (const Game& g : zoo) {
    Rat v1 = game_value(g).value;
    Rat v2 = game_value(tensor_power(g, 2)).value;
    CHECK(v2 <= v1);
    CHECK(v2 >= v1 * v1);
  }
}

TEST_CASE("game json round trip is canonical") {
  for (const Game& g : {anti_correlation(), ghz_game(), hw1_canonical(2)}) {
    std::string once = dump_canonical(game_to_json(g));
    Game parsed = game_from_json(Json::parse(once));
    CHECK(parsed == g);
    CHECK(dump_canonical(game_to_json(parsed)) == once);
  }
}

TEST_CASE("strategy json round trip") {
  Game g = anti_correlation();
  auto res = game_value(g);
  Json j = strategy_to_json(g, res.witness);
  CHECK(strategy_from_json(g, j) == res.witness);

  ProductStrategy rep;
  rep.tables = {{3, 3, 3, 3}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  Json jr = repeated_strategy_to_json(g, 2, rep);
  CHECK(repeated_strategy_from_json(g, 2, jr) == rep);
  CHECK(jr[0].contains("0 0"));
}
