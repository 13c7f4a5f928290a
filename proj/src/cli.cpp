#include "hodge/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <optional>

#include "hodge/axioms.hpp"
#include "hodge/error.hpp"
#include "hodge/io.hpp"
#include "hodge/poisson.hpp"
#include "hodge/shapley.hpp"
#include "hodge/strategic.hpp"
#include "hodge/walk.hpp"

#ifndef HODGE_ALLOC_VERSION
#define HODGE_ALLOC_VERSION "0.0.0"
#endif

namespace hodge {

namespace {

struct Options {
  std::string game, graph, flow, format = "json", method = "subset", kind;
  std::optional<double> alpha;
  std::optional<int> player;
  std::optional<std::size_t> start, target;
  std::size_t episodes = 100000;
  std::uint64_t seed = 0;
  std::size_t max_steps = 10'000'000;
  double tol = kDefaultAxiomTolerance;
  Coalition coalition = 0;
  int players = 0;
};

// Loaded inputs with their digests for the manifest.
class Inputs {
 public:
  Json load(const std::string& role, const std::string& path) {
    const std::string text = read_input(path);
    digests_[role] = fnv1a_hex(text);
    return parse_json(text, path);
  }
  const Json& digests() const { return digests_; }

 private:
  Json digests_ = Json::object();
};

int player_index(const Options& o, int players) {
  const int p = *o.player;
  if (p < 1 || p > players) {
    throw InvalidArgument("--player must be in [1, " + std::to_string(players) + "]");
  }
  return p - 1;
}

NodeId node_arg(std::optional<std::size_t> id, const WeightedMultigraph& g,
                const char* flag) {
  if (!id) throw InvalidArgument(std::string(flag) + " is required");
  if (*id >= g.node_count()) {
    throw InvalidArgument(std::string(flag) + " out of range");
  }
  return *id;
}

std::string cell(double x) { return Json(x).dump(); }

void write_table_tsv(std::ostream& out, const AllocationTable& t, int players) {
  // Columns: nonempty coalitions by size, then lexicographically.
  std::vector<Coalition> order;
  for (Coalition s = 1; s <= grand_coalition(players); ++s) order.push_back(s);
  std::stable_sort(order.begin(), order.end(), [](Coalition a, Coalition b) {
    const int pa = std::popcount(a);
    const int pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    // Lexicographic on the sorted member list.
    for (int k = 0; k < 32; ++k) {
      const bool ia = contains(a, k);
      const bool ib = contains(b, k);
      if (ia != ib) return ia;
    }
    return false;
  });
  out << "component";
  for (Coalition s : order) out << '\t' << coalition_label(s);
  out << '\n';
  for (int i = 0; i < players; ++i) {
    out << "v_" << i + 1;
    for (Coalition s : order) out << '\t' << cell(t[i][s]);
    out << '\n';
  }
}

Json table_json(const AllocationTable& t, int players) {
  Json labels = Json::array();
  for (Coalition s = 0; s <= grand_coalition(players); ++s) {
    labels.push_back(coalition_label(s));
  }
  Json rows = Json::array();
  for (const VertexFunction& v : t) rows.push_back(v.values);
  return {{"players", players}, {"coalitions", labels}, {"components", rows}};
}

Json path_json(const WeightedMultigraph& g, const SamplePath& p) {
  return p.nodes(g);
}

void run(const std::string& cmd, const Options& o, Inputs& in,
         std::ostream& out) {
  if (cmd == "shapley") {
    const CoalitionGame v = game_from_json(in.load("game", o.game));
    if (o.player && !o.alpha) throw InvalidArgument("--player needs --alpha");
    if (o.alpha) {
      if (o.player) {
        const int i = player_index(o, v.players());
        out << Json{{"player", i + 1},
                    {"alpha", *o.alpha},
                    {"value", alpha_shapley(v, i, *o.alpha)}}
                   .dump()
            << '\n';
        return;
      }
      const Hypercube h = build_hypercube(v.players());
      AllocationVector phi;
      for (int i = 0; i < v.players(); ++i) {
        phi.push_back(alpha_shapley(h, v, i, *o.alpha));
      }
      out << Json{{"alpha", *o.alpha}, {"phi", phi}}.dump() << '\n';
      return;
    }
    if (o.method != "subset" && o.method != "permutation") {
      throw InvalidArgument("--method must be subset or permutation");
    }
    const AllocationVector phi =
        o.method == "subset" ? shapley(v) : shapley_by_permutation(v);
    out << Json{{"phi", phi}}.dump() << '\n';
    return;
  }

  if (cmd == "components") {
    const CoalitionGame v = game_from_json(in.load("game", o.game));
    const AllocationTable t = o.alpha ? alpha_component_games(v, *o.alpha)
                                      : component_games(v);
    if (o.format == "tsv") {
      write_table_tsv(out, t, v.players());
    } else if (o.format == "json") {
      out << table_json(t, v.players()).dump() << '\n';
    } else {
      throw InvalidArgument("--format must be json or tsv");
    }
    return;
  }

  if (cmd == "hodge") {
    const WeightedMultigraph g = graph_from_json(in.load("graph", o.graph));
    const EdgeFlow f = flow_from_json(in.load("flow", o.flow));
    if (f.size() != g.edge_count()) {
      throw InvalidArgument("flow has " + std::to_string(f.size()) +
                            " values for " + std::to_string(g.edge_count()) +
                            " edges");
    }
    const NodeId base = node_arg(o.start, g, "--start");
    const PoissonSolution sol = solve_poisson(g, f, base);
    out << Json{{"base", sol.base},
                {"values", sol.values.values},
                {"residual", sol.residual_norm}}
               .dump()
        << '\n';
    return;
  }

  if (cmd == "montecarlo" || cmd == "reduce") {
    const WeightedMultigraph g = graph_from_json(in.load("graph", o.graph));
    const EdgeFlow f = flow_from_json(in.load("flow", o.flow));
    if (f.size() != g.edge_count()) {
      throw InvalidArgument("flow size does not match edge count");
    }
    const NodeId a = node_arg(o.start, g, "--start");
    const NodeId b = node_arg(o.target, g, "--target");
    if (cmd == "montecarlo") {
      const ValueEstimate est =
          estimate_value(g, f, a, b, {o.seed, o.episodes, o.max_steps});
      out << Json{{"mean", est.mean},
                  {"stderr", est.standard_error},
                  {"episodes", est.episodes},
                  {"discarded", est.discarded}}
                 .dump()
          << '\n';
      return;
    }
    Json paths = Json::array();
    double value = 0.0;
    for (const WeightedPath& wp : noloop_weights(g, a, b)) {
      const double integral = path_integral(f, wp.path);
      paths.push_back({{"nodes", path_json(g, wp.path)},
                       {"weight", wp.weight},
                       {"integral", integral}});
    }
    value = reduced_value(g, f, a, b);
    out << Json{{"value", value}, {"paths", paths}}.dump() << '\n';
    return;
  }

  if (cmd == "axioms") {
    const CoalitionGame v = game_from_json(in.load("game", o.game));
    const AxiomReport r = check_axioms(v, component_games(v), o.tol);
    out << axiom_report_to_json(r).dump() << '\n';
    return;
  }

  if (cmd == "threat") {
    const StrategicGame g = strategic_from_json(in.load("game", o.game));
    if (o.coalition > grand_coalition(g.players())) {
      throw InvalidArgument("--coalition out of range");
    }
    out << Json{{"coalition", coalition_label(o.coalition)},
                {"threat_power", threat_power(g, o.coalition)}}
               .dump()
        << '\n';
    return;
  }

  if (cmd == "kn-value") {
    const StrategicGame g = strategic_from_json(in.load("game", o.game));
    Json report = {{"gamma", kn_value(g)}};
    if (o.alpha) {
      report["alpha"] = *o.alpha;
      report["extended"] = table_json(extended_kn_value(g, *o.alpha), g.players());
    }
    out << report.dump() << '\n';
    return;
  }

  if (cmd == "build-graph") {
    if (o.kind == "hypercube") {
      out << graph_to_json(build_hypercube(o.players).graph).dump() << '\n';
    } else if (o.kind == "merger") {
      out << graph_to_json(build_merger_graph(o.players).graph).dump() << '\n';
    } else {
      throw InvalidArgument("--kind must be hypercube or merger");
    }
    return;
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  CLI::App app{"Coalition-state value allocation on graphs", "hodge-alloc"};
  app.set_version_flag("--version", HODGE_ALLOC_VERSION);
  app.require_subcommand(1);
  Options o;

  auto* shapley_cmd = app.add_subcommand("shapley", "Shapley or alpha-Shapley value");
  shapley_cmd->add_option("--game", o.game, "game JSON")->required();
  shapley_cmd->add_option("--alpha", o.alpha, "alpha-flow parameter");
  shapley_cmd->add_option("--player", o.player, "player (1-based)");
  shapley_cmd->add_option("--method", o.method, "subset or permutation");

  auto* components_cmd =
      app.add_subcommand("components", "component games on every coalition");
  components_cmd->add_option("--game", o.game, "game JSON")->required();
  components_cmd->add_option("--alpha", o.alpha, "use alpha flows");
  components_cmd->add_option("--format", o.format, "json or tsv");

  auto* hodge_cmd = app.add_subcommand("hodge", "anchored Poisson solve");
  hodge_cmd->add_option("--graph", o.graph, "graph JSON")->required();
  hodge_cmd->add_option("--flow", o.flow, "flow JSON")->required();
  hodge_cmd->add_option("--start", o.start, "anchor node")->required();

  auto* mc_cmd = app.add_subcommand("montecarlo", "random-walk path integral");
  mc_cmd->add_option("--graph", o.graph, "graph JSON")->required();
  mc_cmd->add_option("--flow", o.flow, "flow JSON")->required();
  mc_cmd->add_option("--start", o.start, "start node")->required();
  mc_cmd->add_option("--target", o.target, "target node")->required();
  mc_cmd->add_option("--episodes", o.episodes, "episode count");
  mc_cmd->add_option("--seed", o.seed, "RNG seed")->required();
  mc_cmd->add_option("--max-steps", o.max_steps, "step cap per episode");

  auto* reduce_cmd = app.add_subcommand("reduce", "loop-erased path sum");
  reduce_cmd->add_option("--graph", o.graph, "graph JSON")->required();
  reduce_cmd->add_option("--flow", o.flow, "flow JSON")->required();
  reduce_cmd->add_option("--start", o.start, "start node")->required();
  reduce_cmd->add_option("--target", o.target, "target node")->required();

  auto* axioms_cmd = app.add_subcommand("axioms", "check A1-A5 on component games");
  axioms_cmd->add_option("--game", o.game, "game JSON")->required();
  axioms_cmd->add_option("--tol", o.tol, "absolute tolerance");

  auto* threat_cmd = app.add_subcommand("threat", "threat power of a coalition");
  threat_cmd->add_option("--game", o.game, "strategic game JSON")->required();
  threat_cmd->add_option("--coalition", o.coalition, "bitmask")->required();

  auto* kn_cmd = app.add_subcommand("kn-value", "Kohlberg-Neyman value");
  kn_cmd->add_option("--game", o.game, "strategic game JSON")->required();
  kn_cmd->add_option("--alpha", o.alpha, "also emit the extended table");

  auto* build_cmd = app.add_subcommand("build-graph", "emit a coalition graph");
  build_cmd->add_option("--kind", o.kind, "hypercube or merger")->required();
  build_cmd->add_option("--players", o.players, "player count")->required();

  std::vector<const char*> argv{"hodge-alloc"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  Inputs inputs;
  int status = kExitOk;
  try {
    run(cmd, o, inputs, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    status = kExitDomainError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    status = kExitDomainError;
  }

  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - started)
                          .count();
  Json manifest = {{"subcommand", cmd},
                   {"inputs", inputs.digests()},
                   {"seed", cmd == "montecarlo" ? Json(o.seed) : Json(nullptr)},
                   {"version", HODGE_ALLOC_VERSION},
                   {"wall_time_s", wall},
                   {"exit", status}};
  err << Json{{"manifest", manifest}}.dump() << '\n';
  return status;
}

int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return dispatch(args, out, err);
}

}  // namespace hodge
