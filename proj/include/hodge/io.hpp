#pragma once

#include <json.hpp>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hodge/axioms.hpp"
#include "hodge/calculus.hpp"
#include "hodge/graph.hpp"
#include "hodge/strategic.hpp"

namespace hodge {

using Json = nlohmann::ordered_json;

// File formats. Readers throw InvalidArgument naming the JSON pointer of
// the offending element.
//   graph: {"nodes": n, "labels": [...], "edges": [{"a", "b", "w"}...]}
//          labels optional, w defaults to 1.0
//   game:  {"players": n, "values": {"<bitmask>": x, ...}} with every
//          bitmask in [0, 2^n) present and "0" mapped to 0
//   flow:  {"edge_values": [x per EdgeId]}
//   strategic game: {"players": n, "actions": [...], "payoffs": [[...]...]}
WeightedMultigraph graph_from_json(const Json& j);
Json graph_to_json(const WeightedMultigraph& g);

CoalitionGame game_from_json(const Json& j);
Json game_to_json(const CoalitionGame& v);

EdgeFlow flow_from_json(const Json& j);
Json flow_to_json(const EdgeFlow& f);

StrategicGame strategic_from_json(const Json& j);
Json strategic_to_json(const StrategicGame& g);

Json axiom_report_to_json(const AxiomReport& r);

/// Parses JSON text; syntax errors become InvalidArgument with the line and
/// column of the failure prefixed by `source`.
Json parse_json(std::string_view text, const std::string& source);

using Fixture = std::variant<CoalitionGame, WeightedMultigraph, StrategicGame>;

/// Shipped fixtures: glove, delta2, delta3, merger3, kn_constant.
const std::vector<std::string>& fixture_names();
/// JSON text of a fixture. Throws InvalidArgument for an unknown name.
const std::string& fixture_text(std::string_view name);
Fixture load_fixture(std::string_view name);

/// Contents of `path`, or of the fixture when `path` is "fixture:NAME".
std::string read_input(const std::string& path);

/// 64-bit FNV-1a digest, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace hodge
