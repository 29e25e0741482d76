// Command-line front end.  Every subcommand goes through the C API; stdout
// carries exactly one payload (JSON or CSV), stderr carries diagnostics.
// Exit codes: 0 success, 1 domain error (the payload is the error document),
// 2 usage error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "parrep.h"

namespace {

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) {
    std::fprintf(stderr, "cannot open %s\n", path.c_str());
    std::exit(2);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct GameHandle {
  parrep_game* g = nullptr;
  ~GameHandle() { parrep_game_free(g); }
};

// prints the payload (or the error document) and converts the return code
int finish(int rc, char* out, char* err) {
  if (rc == PARREP_OK && out) {
    std::fputs(out, stdout);
    parrep_string_free(out);
    return 0;
  }
  if (err) {
    std::fputs(err, stdout);
    parrep_string_free(err);
  }
  return rc == PARREP_OK ? 0 : rc;
}

int load_game(const std::string& path, GameHandle& h) {
  std::string text = read_input(path);
  char* err = nullptr;
  int rc = parrep_game_parse(text.c_str(), &h.g, &err);
  if (rc != PARREP_OK) return finish(rc, nullptr, err);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiplayer games, parallel repetition, and non-signaling values"};
  app.set_version_flag("--version", parrep_version());
  app.require_subcommand(1);

  std::string file = "-";
  std::string game_file = "-";
  std::string format = "json";
  std::string zoo_name;
  int n = 1, n_max = 2, k = 1, d = 4, m = 16, seeds = 100, trials = 1000, pin = 0;
  int pinsker_n = 5, spaces_n = 2;
  std::uint64_t seed = 0, seed0 = 0, budget = 0, trials_u = 100000, samples = 0;
  int threads = 1;
  bool all_subsets = false, no_symmetries = false, check_invariance = false;
  long one_seed = -1;

  auto* validate = app.add_subcommand("validate", "validate a game and echo its canonical form");
  validate->add_option("file", file, "game JSON (default stdin)");

  auto* value = app.add_subcommand("value", "exact game value by exhaustive search");
  value->add_option("file", file);
  value->add_option("--n", n, "solve the n-fold repetition");
  value->add_option("--budget", budget, "strategy-count budget (default 2^30)");
  value->add_option("--threads", threads);

  auto* nsv = app.add_subcommand("ns-value", "exact non-signaling value via rational LP");
  nsv->add_option("file", file);
  nsv->add_flag("--all-subsets", all_subsets, "impose marginals for all proper subsets");
  nsv->add_flag("--no-symmetries", no_symmetries, "disable symmetry reduction");
  nsv->add_flag("--check-invariance", check_invariance, "compare with the n-fold repetition");
  nsv->add_option("--n", n, "repetition count for --check-invariance");

  auto* classify = app.add_subcommand("classify", "connectivity and binary-3-player class");
  classify->add_option("file", file);

  auto* repeat = app.add_subcommand("repeat", "emit the n-fold repetition as a game");
  repeat->add_option("file", file);
  repeat->add_option("--n", n)->required();

  auto* decay = app.add_subcommand("decay", "exact values / certified lower bounds per n");
  decay->add_option("--game", game_file, "game JSON file (default stdin)");
  decay->add_option("--n-max", n_max)->required();
  decay->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  decay->add_option("--seed", seed);
  decay->add_option("--budget", budget, "hill-climbing evaluations per n");
  decay->add_option("--threads", threads);

  auto* zoo = app.add_subcommand("zoo", "emit a named game");
  zoo->add_option("name", zoo_name,
                  "anti-correlation | ghz | five-point | four-point-and | hw1")
      ->required();
  zoo->add_option("--k", k, "parameter of hw1");

  auto* cnf = app.add_subcommand("cnf", "random 3-CNF games: connectivity/value experiment");
  cnf->add_option("--d", d)->required();
  cnf->add_option("--m", m)->required();
  cnf->add_option("--seeds", seeds, "number of seeds (seed0..seed0+N-1)");
  cnf->add_option("--seed0", seed0);
  cnf->add_option("--threads", threads);
  cnf->add_option("--one", one_seed, "emit the formula and game of a single seed");

  auto* diag = app.add_subcommand("diag", "exact and statistical diagnostics");
  auto* spaces = diag->add_subcommand("spaces", "correlated sampling space checks");
  spaces->add_option("--n", spaces_n, "coordinates for the exact checks (up to 4)");
  spaces->add_option("--seed", seed);
  spaces->add_option("--samples", samples);
  auto* pinsker = diag->add_subcommand("pinsker", "randomized Pinsker-bound suite");
  pinsker->add_option("--n", pinsker_n, "max coordinates per case");
  pinsker->add_option("--seed", seed);
  pinsker->add_option("--trials", trials);
  auto* embedding = diag->add_subcommand("embedding", "averaged-L1 event diagnostics");
  embedding->add_option("--game", game_file);
  embedding->add_option("--n", n);
  embedding->add_option("--pin", pin, "pin the first coordinate of this many players");
  diag->require_subcommand(1);

  auto* mc = app.add_subcommand("mc", "Monte-Carlo win estimate for a repeated strategy");
  mc->add_option("file", file);
  mc->add_option("--n", n);
  mc->add_option("--strategy", game_file, "strategy JSON file")->required();
  mc->add_option("--trials", trials_u);
  mc->add_option("--seed", seed);
  mc->add_option("--threads", threads);

  auto* search = app.add_subcommand("search", "hill-climbing lower bound for G^(x)n");
  search->add_option("file", file);
  search->add_option("--n", n);
  std::uint64_t search_budget = 200000;
  search->add_option("--budget", search_budget, "evaluation budget");
  search->add_option("--seed", seed);
  search->add_option("--threads", threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    std::fputs(app.help().c_str(), stderr);
    return 2;
  }

  char* out = nullptr;
  char* err = nullptr;

  if (*validate) {
    GameHandle h;
    if (int rc = load_game(file, h)) return rc;
    int rc = parrep_game_render(h.g, &out);
    return finish(rc, out, nullptr);
  }
  if (*value) {
    GameHandle h;
    if (int rc = load_game(file, h)) return rc;
    parrep_game* target = h.g;
    GameHandle repeated;
    if (n > 1) {
      int rc = parrep_tensor_power(h.g, n, &repeated.g, &err);
      if (rc != PARREP_OK) return finish(rc, nullptr, err);
      target = repeated.g;
    }
    int rc = parrep_game_value(target, budget, threads, &out, &err);
    return finish(rc, out, err);
  }
  if (*nsv) {
    GameHandle h;
    if (int rc = load_game(file, h)) return rc;
    int rc = check_invariance
                 ? parrep_ns_invariance(h.g, n, &out, &err)
                 : parrep_ns_value(h.g, all_subsets ? 1 : 0, no_symmetries ? 0 : 1, &out, &err);
    return finish(rc, out, err);
  }
  if (*classify) {
    GameHandle h;
    if (int rc = load_game(file, h)) return rc;
    int rc = parrep_classify(h.g, &out, &err);
    return finish(rc, out, err);
  }
  if (*repeat) {
    GameHandle h;
    if (int rc = load_game(file, h)) return rc;
    GameHandle repeated;
    int rc = parrep_tensor_power(h.g, n, &repeated.g, &err);
    if (rc != PARREP_OK) return finish(rc, nullptr, err);
    rc = parrep_game_render(repeated.g, &out);
    return finish(rc, out, nullptr);
  }
  if (*decay) {
    GameHandle h;
    if (int rc = load_game(game_file, h)) return rc;
    int rc = parrep_decay_curve(h.g, n_max, seed, budget, threads, format == "csv" ? 1 : 0,
                                &out, &err);
    return finish(rc, out, err);
  }
  if (*zoo) {
    GameHandle h;
    int rc = parrep_zoo_game(zoo_name.c_str(), k, &h.g, &err);
    if (rc != PARREP_OK) return finish(rc, nullptr, err);
    rc = parrep_game_render(h.g, &out);
    return finish(rc, out, nullptr);
  }
  if (*cnf) {
    int rc = one_seed >= 0
                 ? parrep_cnf_game(d, m, static_cast<uint64_t>(one_seed), &out, &err)
                 : parrep_cnf_experiment(d, m, seeds, seed0, threads, &out, &err);
    return finish(rc, out, err);
  }
  if (*spaces) {
    int rc = parrep_diag_spaces(spaces_n, seed, samples, &out, &err);
    return finish(rc, out, err);
  }
  if (*pinsker) {
    int rc = parrep_diag_pinsker(pinsker_n, seed, trials, &out, &err);
    return finish(rc, out, err);
  }
  if (*embedding) {
    GameHandle h;
    if (int rc = load_game(game_file, h)) return rc;
    int rc = parrep_diag_embedding(h.g, n, pin, &out, &err);
    return finish(rc, out, err);
  }
  if (*mc) {
    GameHandle h;
    if (int rc = load_game(file, h)) return rc;
    std::string strategy = read_input(game_file);
    int rc = parrep_mc_estimate(h.g, n, strategy.c_str(), trials_u, seed, threads, &out, &err);
    return finish(rc, out, err);
  }
  if (*search) {
    GameHandle h;
    if (int rc = load_game(file, h)) return rc;
    int rc = parrep_heuristic_search(h.g, n, search_budget, seed, threads, &out, &err);
    return finish(rc, out, err);
  }
  return 2;
}
