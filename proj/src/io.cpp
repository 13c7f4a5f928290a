#include "hodge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "hodge/error.hpp"

namespace hodge {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InvalidArgument((where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const std::string& where, const char* key) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing \"") + key + '"');
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(where, "number not finite");
  return x;
}

long long integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15) {
      return static_cast<long long>(x);
    }
  }
  fail(where, "expected an integer");
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

// Rethrows library errors with the JSON pointer prefixed.
template <typename F>
auto at_path(const std::string& where, F&& build) {
  try {
    return build();
  } catch (const InvalidArgument& e) {
    throw InvalidArgument((where.empty() ? std::string("/") : where) + ": " +
                          e.what());
  }
}

}  // namespace

WeightedMultigraph graph_from_json(const Json& j) {
  const long long n = integer(field(j, "", "nodes"), "/nodes");
  if (n < 1) fail("/nodes", "need at least one node");
  std::vector<std::string> labels;
  if (auto it = j.find("labels"); it != j.end()) {
    const Json& arr = array(*it, "/labels");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      if (!arr[k].is_string()) fail("/labels/" + std::to_string(k), "expected a string");
      labels.push_back(arr[k].get<std::string>());
    }
  }
  std::vector<Edge> edges;
  const Json& arr = array(field(j, "", "edges"), "/edges");
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string where = "/edges/" + std::to_string(k);
    const long long a = integer(field(arr[k], where, "a"), where + "/a");
    const long long b = integer(field(arr[k], where, "b"), where + "/b");
    if (a < 0 || a >= n) fail(where + "/a", "endpoint out of range");
    if (b < 0 || b >= n) fail(where + "/b", "endpoint out of range");
    double w = 1.0;
    if (auto it = arr[k].find("w"); it != arr[k].end()) {
      w = number(*it, where + "/w");
      if (!(w > 0.0)) fail(where + "/w", "weight must be positive");
    }
    edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), w});
  }
  return at_path("", [&] {
    return WeightedMultigraph(static_cast<std::size_t>(n), std::move(edges),
                              std::move(labels));
  });
}

Json graph_to_json(const WeightedMultigraph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({{"a", e.a}, {"b", e.b}, {"w", e.weight}});
  }
  Json labels = Json::array();
  for (const std::string& l : g.labels()) labels.push_back(l);
  return {{"nodes", g.node_count()}, {"labels", labels}, {"edges", edges}};
}

CoalitionGame game_from_json(const Json& j) {
  const long long n = integer(field(j, "", "players"), "/players");
  if (n < 1 || n > kMaxPlayers) fail("/players", "player count must be in [1, 20]");
  const Json& values = field(j, "", "values");
  if (!values.is_object()) fail("/values", "expected an object");
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> v(size, 0.0);
  std::vector<bool> seen(size, false);
  for (auto it = values.begin(); it != values.end(); ++it) {
    const std::string& key = it.key();
    const std::string where = "/values/" + key;
    std::size_t pos = 0;
    unsigned long long s = 0;
    try {
      s = std::stoull(key, &pos, 10);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (key.empty() || pos != key.size() || key[0] == '-' || key[0] == '+') {
      fail(where, "key is not a decimal bitmask");
    }
    if (s >= size) fail(where, "bitmask out of range");
    v[s] = number(it.value(), where);
    seen[s] = true;
  }
  if (!seen[0]) fail("/values", "missing \"0\"");
  if (v[0] != 0.0) fail("/values/0", "v(empty) must be 0");
  for (std::size_t s = 0; s < size; ++s) {
    if (!seen[s]) fail("/values", "missing \"" + std::to_string(s) + '"');
  }
  return CoalitionGame(static_cast<int>(n), std::move(v));
}

Json game_to_json(const CoalitionGame& v) {
  Json values = Json::object();
  for (Coalition s = 0; s <= v.grand(); ++s) values[std::to_string(s)] = v(s);
  return {{"players", v.players()}, {"values", values}};
}

EdgeFlow flow_from_json(const Json& j) {
  const Json& arr = array(field(j, "", "edge_values"), "/edge_values");
  EdgeFlow f(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    f[k] = number(arr[k], "/edge_values/" + std::to_string(k));
  }
  return f;
}

Json flow_to_json(const EdgeFlow& f) {
  return {{"edge_values", f.forward_values}};
}

StrategicGame strategic_from_json(const Json& j) {
  const long long n = integer(field(j, "", "players"), "/players");
  const Json& acts = array(field(j, "", "actions"), "/actions");
  if (n < 1 || static_cast<std::size_t>(n) != acts.size()) {
    fail("/actions", "need one action count per player");
  }
  std::vector<int> actions;
  for (std::size_t k = 0; k < acts.size(); ++k) {
    const long long m = integer(acts[k], "/actions/" + std::to_string(k));
    if (m < 1 || m > static_cast<long long>(kMaxProfiles)) {
      fail("/actions/" + std::to_string(k), "action count out of range");
    }
    actions.push_back(static_cast<int>(m));
  }
  const Json& pay = array(field(j, "", "payoffs"), "/payoffs");
  std::vector<std::vector<double>> payoffs;
  for (std::size_t i = 0; i < pay.size(); ++i) {
    const std::string where = "/payoffs/" + std::to_string(i);
    const Json& row = array(pay[i], where);
    std::vector<double> g;
    for (std::size_t k = 0; k < row.size(); ++k) {
      g.push_back(number(row[k], where + "/" + std::to_string(k)));
    }
    payoffs.push_back(std::move(g));
  }
  return at_path("/payoffs", [&] {
    return StrategicGame(std::move(actions), std::move(payoffs));
  });
}

Json strategic_to_json(const StrategicGame& g) {
  return {{"players", g.players()},
          {"actions", g.actions()},
          {"payoffs", g.payoffs()}};
}

Json axiom_report_to_json(const AxiomReport& r) {
  Json axioms = Json::array();
  for (const AxiomResult& a : r.results) {
    Json witness = {{"S", coalition_label(a.witness.s)}};
    witness["i"] = a.witness.i < 0 ? Json(nullptr) : Json(a.witness.i + 1);
    witness["j"] = a.witness.j < 0 ? Json(nullptr) : Json(a.witness.j + 1);
    Json entry = {{"axiom", a.axiom},
                  {"pass", a.pass},
                  {"violation", a.violation},
                  {"witness", witness}};
    if (!a.note.empty()) entry["note"] = a.note;
    axioms.push_back(std::move(entry));
  }
  return {{"tolerance", r.tolerance}, {"pass", r.passed()}, {"axioms", axioms}};
}

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // Recover line and column from the byte offset.
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InvalidArgument(source + ":" + std::to_string(line) + ":" +
                          std::to_string(col) + ": malformed JSON");
  }
}

namespace {

std::string build_fixture(std::string_view name) {
  if (name == "glove") {
    return game_to_json(CoalitionGame::from_function(3, [](Coalition s) {
             return contains(s, 0) && (contains(s, 1) || contains(s, 2)) ? 1.0
                                                                          : 0.0;
           }))
        .dump();
  }
  if (name == "delta2" || name == "delta3") {
    const int n = name == "delta2" ? 2 : 3;
    return game_to_json(CoalitionGame::from_function(n, [n](Coalition s) {
             return s == grand_coalition(n) ? 1.0 : 0.0;
           }))
        .dump();
  }
  if (name == "merger3") return graph_to_json(build_merger_graph(3).graph).dump();
  if (name == "kn_constant") {
    return strategic_to_json(StrategicGame({1, 1}, {{3.0}, {1.0}})).dump();
  }
  throw InvalidArgument("unknown fixture \"" + std::string(name) + '"');
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"glove", "delta2", "delta3",
                                              "merger3", "kn_constant"};
  return names;
}

const std::string& fixture_text(std::string_view name) {
  static const std::map<std::string, std::string, std::less<>> texts = [] {
    std::map<std::string, std::string, std::less<>> m;
    for (const std::string& n : fixture_names()) m.emplace(n, build_fixture(n));
    return m;
  }();
  auto it = texts.find(name);
  if (it == texts.end()) {
    throw InvalidArgument("unknown fixture \"" + std::string(name) + '"');
  }
  return it->second;
}

Fixture load_fixture(std::string_view name) {
  const Json j = parse_json(fixture_text(name), "fixture:" + std::string(name));
  if (name == "merger3") return graph_from_json(j);
  if (name == "kn_constant") return strategic_from_json(j);
  return game_from_json(j);
}

std::string read_input(const std::string& path) {
  constexpr std::string_view kPrefix = "fixture:";
  if (path.rfind(kPrefix, 0) == 0) return fixture_text(path.substr(kPrefix.size()));
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace hodge
