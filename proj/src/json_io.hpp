// Canonical JSON (de)serialization.  Games serialize with sorted object keys,
// sorted alphabets/support/win arrays and lowest-terms rationals, so that a
// serialize -> parse -> serialize round trip is byte-identical.
#pragma once

#include <string>

#include "game.hpp"
#include "json.hpp"

namespace parrep {

using Json = nlohmann::json;

Json game_to_json(const Game& g);
Game game_from_json(const Json& j);

// Strategies serialize as one {question -> answer} object per player.
Json strategy_to_json(const Game& g, const ProductStrategy& s);
ProductStrategy strategy_from_json(const Game& g, const Json& j);

// Same, for a strategy of the n-fold repetition of g (question keys are the
// space-joined tuple symbols used by tensor_power).
Json repeated_strategy_to_json(const Game& g, int n, const ProductStrategy& s);
ProductStrategy repeated_strategy_from_json(const Game& g, int n, const Json& j);

Json error_to_json(const DomainError& e);

std::string dump_canonical(const Json& j);

}  // namespace parrep
