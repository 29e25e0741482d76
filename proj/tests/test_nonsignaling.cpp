#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nonsignaling.hpp"
#include "zoo.hpp"

using namespace parrep;

TEST_CASE("anti-correlation LP has 64 variables") {
  LinearProgram lp = build_ns_lp(anti_correlation());
  CHECK(lp.num_vars == 64);
}

TEST_CASE("a 1-player game's non-signaling value is its classical value") {
  RawGame raw;
  raw.players = 1;
  raw.questions = {{"0", "1"}};
  raw.answers = {{"0", "1"}};
  raw.support = {{{"0"}, "1/2"}, {{"1"}, "1/2"}};
  raw.win = {{{"0"}, {"1"}}};  // wins only on question 0 with answer 1
  Game g = validate_game(raw);
  CHECK(game_value(g).value == Rat(1, 2));
  CHECK(ns_value(g).optimum == Rat(1, 2));
}

TEST_CASE("non-signaling value of the anti-correlation game is 2/3") {
  Game g = anti_correlation();
  NsResult full = ns_value(g, {.use_symmetries = false});
  CHECK(full.optimum == Rat(2, 3));
  NsResult reduced = ns_value(g);
  CHECK(reduced.optimum == Rat(2, 3));
  CHECK(reduced.orbit_count < 64);
  CHECK(verify_ns_strategy(g, reduced.witness));
  // classical value equals the non-signaling value here
  CHECK(game_value(g).value == reduced.optimum);
}

TEST_CASE("anti-correlation optimum cross-checked by the parity argument") {
  // The value equals the mean of the three pairwise disagreement
  // probabilities at the all-ones question: by non-signaling, the marginal
  // of a pair at questions (1,1) is the same whether the third player holds
  // 0 or 1, and three bits cannot pairwise disagree in more than two pairs,
  // so the optimum is at most 2/3 independently of the simplex run.
  Game g = anti_correlation();
  NsResult r = ns_value(g);
  Tuple all_ones = {1, 1, 1};
  Rat disagreement_sum;
  for (int p = 0; p < 3; p++)
    for (int q = p + 1; q < 3; q++) {
      Rat d;
      for (int a = 0; a < 2; a++)
        for (int b = 0; b < 2; b++)
          for (int c = 0; c < 2; c++) {
            Tuple ans = {a, b, c};
            if (ans[p] != ans[q]) d += r.witness.at(all_ones, ans);
          }
      disagreement_sum += d;
    }
  CHECK(disagreement_sum <= Rat(2));
  CHECK(r.optimum == disagreement_sum / Rat(3));
}

TEST_CASE("non-signaling value of the GHZ game is 1, with an explicit box") {
  Game g = ghz_game();
  NsResult r = ns_value(g);
  CHECK(r.optimum == Rat(1));

  // cross-check: the parity box p(a,b,c|x,y,z) = 1/4 when a^b^c = x|y|z
  // is non-signaling and wins always
  NsStrategy box;
  box.question_radii = {2, 2, 2};
  box.answer_radii = {2, 2, 2};
  box.p.assign(64, Rat(0));
  for (int x = 0; x < 2; x++)
    for (int y = 0; y < 2; y++)
      for (int z = 0; z < 2; z++)
        for (int a = 0; a < 2; a++)
          for (int b = 0; b < 2; b++)
            for (int c = 0; c < 2; c++)
              if ((a ^ b ^ c) == (x | y | z)) {
                Tuple qt = {x, y, z}, at = {a, b, c};
                box.p[tuple_rank(qt, box.question_radii) * 8 + tuple_rank(at, box.answer_radii)] =
                    Rat(1, 4);
              }
  CHECK(verify_ns_strategy(g, box));
  Rat value;
  for (const auto& [q, w] : g.support)
    for (auto it = g.win.lower_bound({q, Tuple()}); it != g.win.end() && it->first == q; ++it)
      value += w * box.at(q, it->second);
  CHECK(value == Rat(1));
}

TEST_CASE("ns_value(g) = 1 when val(g) = 1") {
  Game trivial = ghz_support_game([](int, int, int, int, int, int) { return true; });
  CHECK(game_value(trivial).value == Rat(1));
  CHECK(ns_value(trivial).optimum == Rat(1));
}

TEST_CASE("formulation equivalence: all-subsets vs (k-1)-subsets") {
  Game four = four_point_and_game(
      [](int x, int y, int z, int a, int b, int c) { return a == z && b == z && c == z; });
  std::vector<Game> games = {anti_correlation(), ghz_game(), five_point_example(), four,
                             hw1_canonical(1), hw1_canonical(2),
                             restricted_two_player(four, 0, {1}, {1})};
  for (const Game& g : games) {
    NsResult a = ns_value(g, {.mode = NsMode::KMinusOne});
    NsResult b = ns_value(g, {.mode = NsMode::AllSubsets});
    CHECK(a.optimum == b.optimum);
  }
}

TEST_CASE("ns_value is at least the classical value on the zoo") {
  Game four = four_point_and_game(
      [](int x, int y, int z, int a, int b, int c) { return a == z && b == z && c == z; });
  for (const Game& g : {anti_correlation(), ghz_game(), five_point_example(), four,
                        hw1_canonical(1), hw1_canonical(2)}) {
    CHECK(ns_value(g).optimum >= game_value(g).value);
  }
}

TEST_CASE("symmetry reduction agrees with the full LP on small games") {
  for (const Game& g : {anti_correlation(), ghz_game(), five_point_example()}) {
    NsResult full = ns_value(g, {.use_symmetries = false});
    NsResult reduced = ns_value(g, {.use_symmetries = true});
    CHECK(full.optimum == reduced.optimum);
  }
}

TEST_CASE("detected symmetries all verify; bogus ones are rejected") {
  Game g = anti_correlation();
  auto syms = detect_symmetries(g);
  CHECK(!syms.empty());  // player permutations and the global answer flip
  for (const auto& s : syms) CHECK(verify_symmetry(g, s));

  GameSymmetry bogus;
  bogus.player_perm = {0, 1, 2};
  for (int j = 0; j < 3; j++) {
    bogus.question_map.push_back({1, 0});  // flipping questions breaks the support
    bogus.answer_map.push_back({0, 1});
  }
  CHECK(!verify_symmetry(g, bogus));
  NsOptions opts;
  opts.extra = {bogus};
  bool threw = false;
  try {
    ns_value(g, opts);
  } catch (const DomainError& e) {
    threw = true;
    CHECK(e.kind() == ErrorKind::bad_request);
  }
  CHECK(threw);
}

TEST_CASE("non-signaling invariance of the anti-correlation game at n = 2") {
  Game g = anti_correlation();
  NsResult base = ns_value(g);
  NsResult squared = ns_value_repeated(g, 2);
  CHECK(base.optimum == Rat(2, 3));
  CHECK(squared.optimum == base.optimum);
  CHECK(verify_ns_strategy(tensor_power(g, 2), squared.witness));
}

TEST_CASE("ns_value on a materialized repetition recognizes the product structure") {
  // no lifted symmetries passed in: the solver recognizes the space-joined
  // product alphabets, proposes candidates, and verifies them before use
  Game square = tensor_power(anti_correlation(), 2);
  NsResult r = ns_value(square);
  CHECK(r.optimum == Rat(2, 3));
  CHECK(r.orbit_count < 200);
}

TEST_CASE("marginal-restriction monotonicity at n = 2") {
  for (const Game& g : {anti_correlation(), ghz_game()}) {
    NsResult base = ns_value(g);
    NsResult squared = ns_value_repeated(g, 2);
    CHECK(squared.optimum <= base.optimum);
  }
}

TEST_CASE("ns budget is enforced") {
  bool threw = false;
  try {
    ns_value(anti_correlation(), {.max_variables = 10});
  } catch (const DomainError& e) {
    threw = true;
    CHECK(e.kind() == ErrorKind::budget_exceeded);
  }
  CHECK(threw);
}
