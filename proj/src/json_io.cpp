#include "json_io.hpp"

#include <algorithm>

namespace parrep {

namespace {

std::vector<std::string> string_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(ErrorKind::bad_request, path, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); i++) {
    if (!j[i].is_string())
      fail(ErrorKind::bad_request, path + "/" + std::to_string(i), "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

std::vector<std::vector<std::string>> alphabet_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(ErrorKind::bad_request, path, "expected an array of arrays");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < j.size(); i++)
    out.push_back(string_array(j[i], path + "/" + std::to_string(i)));
  return out;
}

const Json& field(const Json& j, const char* name, const std::string& path) {
  if (!j.is_object() || !j.contains(name))
    fail(ErrorKind::bad_request, path + "/" + name, "missing field");
  return j.at(name);
}

std::vector<std::string> symbol_tuple(const Game& g,
                                      const std::vector<std::vector<std::string>>& alphabets,
                                      const Tuple& t) {
  std::vector<std::string> out(g.players);
  for (int j = 0; j < g.players; j++) out[j] = alphabets[j][t[j]];
  return out;
}

}  // namespace

Json game_to_json(const Game& g) {
  Json j;
  j["players"] = g.players;
  j["questions"] = g.questions;
  j["answers"] = g.answers;
  Json support = Json::array();
  for (const auto& [q, w] : g.support)
    support.push_back({{"q", symbol_tuple(g, g.questions, q)}, {"w", w.str()}});
  j["support"] = support;
  Json win = Json::array();
  for (const auto& [q, a] : g.win)
    win.push_back({{"q", symbol_tuple(g, g.questions, q)}, {"a", symbol_tuple(g, g.answers, a)}});
  j["win"] = win;
  return j;
}

Game game_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::bad_request, "/", "expected a game object");
  RawGame raw;
  const Json& players = field(j, "players", "");
  if (!players.is_number_integer())
    fail(ErrorKind::bad_request, "/players", "expected an integer");
  raw.players = players.get<int>();
  raw.questions = alphabet_array(field(j, "questions", ""), "/questions");
  raw.answers = alphabet_array(field(j, "answers", ""), "/answers");

  const Json& support = field(j, "support", "");
  if (!support.is_array()) fail(ErrorKind::bad_request, "/support", "expected an array");
  for (std::size_t i = 0; i < support.size(); i++) {
    std::string path = "/support/" + std::to_string(i);
    const Json& w = field(support[i], "w", path);
    if (!w.is_string()) fail(ErrorKind::bad_request, path + "/w", "expected a rational string");
    raw.support.emplace_back(string_array(field(support[i], "q", path), path + "/q"),
                             w.get<std::string>());
  }

  const Json& win = field(j, "win", "");
  if (!win.is_array()) fail(ErrorKind::bad_request, "/win", "expected an array");
  for (std::size_t i = 0; i < win.size(); i++) {
    std::string path = "/win/" + std::to_string(i);
    raw.win.emplace_back(string_array(field(win[i], "q", path), path + "/q"),
                         string_array(field(win[i], "a", path), path + "/a"));
  }
  return validate_game(raw);
}

namespace {

Json tables_to_json(const std::vector<std::vector<std::string>>& questions,
                    const std::vector<std::vector<std::string>>& answers,
                    const ProductStrategy& s) {
  Json j = Json::array();
  for (std::size_t p = 0; p < s.tables.size(); p++) {
    Json table;
    for (std::size_t q = 0; q < s.tables[p].size(); q++)
      table[questions[p][q]] = answers[p][s.tables[p][q]];
    j.push_back(table);
  }
  return j;
}

ProductStrategy tables_from_json(const std::vector<std::vector<std::string>>& questions,
                                 const std::vector<std::vector<std::string>>& answers,
                                 const Json& j) {
  if (!j.is_array() || j.size() != questions.size())
    fail(ErrorKind::alphabet_mismatch, "/strategy", "expected one table per player");
  ProductStrategy s;
  for (std::size_t p = 0; p < questions.size(); p++) {
    std::string path = "/strategy/" + std::to_string(p);
    if (!j[p].is_object()) fail(ErrorKind::bad_request, path, "expected an object");
    std::vector<int> table(questions[p].size(), -1);
    for (auto it = j[p].begin(); it != j[p].end(); ++it) {
      auto qit = std::lower_bound(questions[p].begin(), questions[p].end(), it.key());
      if (qit == questions[p].end() || *qit != it.key())
        fail(ErrorKind::symbol_out_of_alphabet, path, "unknown question '" + it.key() + "'");
      if (!it.value().is_string())
        fail(ErrorKind::bad_request, path + "/" + it.key(), "expected a string");
      std::string a = it.value().get<std::string>();
      auto ait = std::lower_bound(answers[p].begin(), answers[p].end(), a);
      if (ait == answers[p].end() || *ait != a)
        fail(ErrorKind::symbol_out_of_alphabet, path + "/" + it.key(),
             "unknown answer '" + a + "'");
      table[qit - questions[p].begin()] = static_cast<int>(ait - answers[p].begin());
    }
    for (std::size_t q = 0; q < table.size(); q++)
      if (table[q] < 0)
        fail(ErrorKind::alphabet_mismatch, path, "missing question '" + questions[p][q] + "'");
    s.tables.push_back(std::move(table));
  }
  return s;
}

std::vector<std::vector<std::string>> joined_alphabets(
    const std::vector<std::vector<std::string>>& base, int n) {
  std::vector<std::vector<std::string>> out;
  for (const auto& alphabet : base) {
    std::vector<std::string> joined;
    std::vector<int> radii(n, static_cast<int>(alphabet.size()));
    for (const auto& idx : all_tuples(radii)) {
      std::string s;
      for (int i = 0; i < n; i++) {
        if (i) s += ' ';
        s += alphabet[idx[i]];
      }
      joined.push_back(std::move(s));
    }
    out.push_back(std::move(joined));
  }
  return out;
}

}  // namespace

Json strategy_to_json(const Game& g, const ProductStrategy& s) {
  check_strategy_shape(g, s);
  return tables_to_json(g.questions, g.answers, s);
}

ProductStrategy strategy_from_json(const Game& g, const Json& j) {
  ProductStrategy s = tables_from_json(g.questions, g.answers, j);
  check_strategy_shape(g, s);
  return s;
}

Json repeated_strategy_to_json(const Game& g, int n, const ProductStrategy& s) {
  return tables_to_json(joined_alphabets(g.questions, n), joined_alphabets(g.answers, n), s);
}

ProductStrategy repeated_strategy_from_json(const Game& g, int n, const Json& j) {
  return tables_from_json(joined_alphabets(g.questions, n), joined_alphabets(g.answers, n), j);
}

Json error_to_json(const DomainError& e) {
  return Json{{"error",
               {{"kind", error_kind_name(e.kind())}, {"path", e.path()}, {"message", e.what()}}}};
}

std::string dump_canonical(const Json& j) { return j.dump() + "\n"; }

}  // namespace parrep
