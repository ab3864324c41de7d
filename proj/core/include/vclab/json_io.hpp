#pragma once

#include <nlohmann/json.hpp>

#include "vclab/game.hpp"
#include "vclab/layers.hpp"
#include "vclab/rational.hpp"
#include "vclab/reduce.hpp"
#include "vclab/setfam.hpp"
#include "vclab/solve.hpp"

namespace vclab::io {

// ordered_json keeps emission order fixed, which the determinism contract
// (byte-identical reports for identical config+seed) relies on.
using Json = nlohmann::ordered_json;

// Rationals serialize as {"num": int, "den": int}; instance files carry no
// floats.
Json rat_json(const Rat& r);
Rat rat_from_json(const Json& j, const std::string& field);

Json family_json(const setfam::SetFamily& f);
setfam::SetFamily family_from_json(const Json& j);

Json game_json(const game::ProjectionGame& g);
game::ProjectionGame game_from_json(const Json& j);

Json labeling_json(const game::GameLabeling& lab);
game::GameLabeling labeling_from_json(const Json& j);

// Counts and parameters; constraint pair lists included when with_constraints.
Json layered_summary_json(const layers::LayeredInstance& inst, bool with_constraints = false);

Json generic_hypergraph_json(const solve::GenericHypergraph& h);
solve::GenericHypergraph generic_hypergraph_from_json(const Json& j);

Json solution_json(const solve::Cover& cover, long long nodes, bool optimal);

// Explicit mode lists edges; implicit mode exports the predicate parameters
// (k, p, block table) instead.
Json long_code_hypergraph_json(const reduce::LongCodeHypergraph& h);

Json vertex_set_json(const reduce::VertexSet& s);
std::vector<long long> vertex_ids_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace vclab::io
