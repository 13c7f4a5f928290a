#include "hodge/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "hodge/error.hpp"

namespace hodge {

WeightedMultigraph::WeightedMultigraph(std::size_t nodes,
                                       std::vector<Edge> edges,
                                       std::vector<std::string> labels)
    : node_count_(nodes), edges_(std::move(edges)), labels_(std::move(labels)) {
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    if (e.a >= nodes || e.b >= nodes) {
      throw InvalidArgument("edge " + std::to_string(k) +
                            ": endpoint out of range");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InvalidArgument("edge " + std::to_string(k) +
                            ": weight must be positive and finite");
    }
  }
  if (labels_.empty()) {
    labels_.reserve(nodes);
    for (std::size_t s = 0; s < nodes; ++s) labels_.push_back(std::to_string(s));
  } else if (labels_.size() != nodes) {
    throw InvalidArgument("label count does not match node count");
  }

  // CSR table of outgoing oriented edges.
  std::vector<std::size_t> degree(nodes, 0);
  for (const Edge& e : edges_) {
    ++degree[e.a];
    ++degree[e.b];
  }
  out_offsets_.assign(nodes + 1, 0);
  for (std::size_t s = 0; s < nodes; ++s) {
    out_offsets_[s + 1] = out_offsets_[s] + degree[s];
  }
  out_edges_.resize(out_offsets_[nodes]);
  std::vector<std::size_t> cursor(out_offsets_.begin(), out_offsets_.end() - 1);
  for (EdgeId k = 0; k < edges_.size(); ++k) {
    out_edges_[cursor[edges_[k].a]++] = {k, Direction::kForward};
    out_edges_[cursor[edges_[k].b]++] = {k, Direction::kReverse};
  }
}

const Edge& WeightedMultigraph::edge(EdgeId e) const {
  if (e >= edges_.size()) throw InvalidArgument("edge id out of range");
  return edges_[e];
}

const std::string& WeightedMultigraph::label(NodeId s) const {
  if (s >= node_count_) throw InvalidArgument("node id out of range");
  return labels_[s];
}

NodeId WeightedMultigraph::initial(OrientedEdge e) const {
  const Edge& ed = edge(e.edge);
  return e.forward() ? ed.a : ed.b;
}

NodeId WeightedMultigraph::terminal(OrientedEdge e) const {
  const Edge& ed = edge(e.edge);
  return e.forward() ? ed.b : ed.a;
}

std::span<const OrientedEdge> WeightedMultigraph::outgoing(NodeId s) const {
  if (s >= node_count_) throw InvalidArgument("node id out of range");
  return std::span<const OrientedEdge>(out_edges_)
      .subspan(out_offsets_[s], out_offsets_[s + 1] - out_offsets_[s]);
}

double WeightedMultigraph::total_weight(NodeId s) const {
  double total = 0.0;
  for (OrientedEdge e : outgoing(s)) total += weight(e);
  return total;
}

bool WeightedMultigraph::is_connected() const {
  if (node_count_ == 0) return false;
  std::vector<bool> seen(node_count_, false);
  std::queue<NodeId> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const NodeId s = frontier.front();
    frontier.pop();
    for (OrientedEdge e : outgoing(s)) {
      const NodeId t = terminal(e);
      if (!seen[t]) {
        seen[t] = true;
        ++reached;
        frontier.push(t);
      }
    }
  }
  return reached == node_count_;
}

WeightedMultigraph construct_graph(std::size_t nodes, std::vector<Edge> edges) {
  return WeightedMultigraph(nodes, std::move(edges));
}

std::span<const OrientedEdge> incident_oriented_edges(
    const WeightedMultigraph& g, NodeId s) {
  return g.outgoing(s);
}

std::string coalition_label(Coalition s) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if (!contains(s, i)) continue;
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

CoalitionGame::CoalitionGame(int players, std::vector<double> values)
    : players_(players), values_(std::move(values)) {
  if (players < 1 || players > kMaxPlayers) {
    throw InvalidArgument("player count must be in [1, 20]");
  }
  if (values_.size() != (std::size_t{1} << players)) {
    throw InvalidArgument("coalition game needs 2^N values");
  }
  if (values_[0] != 0.0) {
    throw InvalidArgument("coalition game requires v(empty) = 0");
  }
  for (double x : values_) {
    if (!std::isfinite(x)) throw InvalidArgument("coalition value not finite");
  }
}

CoalitionGame CoalitionGame::from_function(
    int players, const std::function<double(Coalition)>& v) {
  if (players < 1 || players > kMaxPlayers) {
    throw InvalidArgument("player count must be in [1, 20]");
  }
  std::vector<double> values(std::size_t{1} << players);
  for (Coalition s = 0; s < values.size(); ++s) values[s] = v(s);
  return CoalitionGame(players, std::move(values));
}

double CoalitionGame::value(Coalition s) const {
  if (s >= values_.size()) throw InvalidArgument("coalition out of range");
  return values_[s];
}

EdgeId Hypercube::edge(Coalition s, int player) const {
  if (player < 0 || player >= players) {
    throw InvalidArgument("player out of range");
  }
  if (s > grand_coalition(players) || contains(s, player)) {
    throw InvalidArgument("no hypercube edge for this (coalition, player)");
  }
  return edge_index_[static_cast<std::size_t>(s) * players + player];
}

Hypercube build_hypercube(int players) {
  if (players < 1 || players > kMaxPlayers) {
    throw InvalidArgument("hypercube needs 1 <= N <= 20");
  }
  const std::size_t nodes = std::size_t{1} << players;
  Hypercube h;
  h.players = players;
  h.edge_index_.assign(nodes * players, ~EdgeId{0});
  std::vector<Edge> edges;
  edges.reserve(nodes * players / 2);
  std::vector<std::string> labels;
  labels.reserve(nodes);
  for (Coalition s = 0; s < nodes; ++s) {
    labels.push_back(coalition_label(s));
    for (int i = 0; i < players; ++i) {
      if (contains(s, i)) continue;
      h.edge_index_[static_cast<std::size_t>(s) * players + i] = edges.size();
      h.edge_player_.push_back(i);
      edges.push_back({s, with_player(s, i), 1.0});
    }
  }
  h.graph = WeightedMultigraph(nodes, std::move(edges), std::move(labels));
  return h;
}

std::string partition_label(const Partition& p) {
  std::string out;
  for (const auto& block : p) {
    out += '{';
    for (std::size_t k = 0; k < block.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(block[k] + 1);
    }
    out += '}';
  }
  return out;
}

std::vector<Partition> enumerate_partitions(int n) {
  // Restricted growth strings: a[0] = 0, a[k] <= 1 + max(a[0..k-1]).
  std::vector<Partition> out;
  std::vector<int> a(n, 0);
  std::vector<int> prefix_max(n, 0);
  while (true) {
    Partition p(static_cast<std::size_t>(prefix_max[n - 1]) + 1);
    for (int k = 0; k < n; ++k) p[a[k]].push_back(k);
    out.push_back(std::move(p));

    int k = n - 1;
    while (k > 0 && a[k] == prefix_max[k - 1] + 1) --k;
    if (k == 0) break;
    ++a[k];
    prefix_max[k] = std::max(prefix_max[k - 1], a[k]);
    for (int m = k + 1; m < n; ++m) {
      a[m] = 0;
      prefix_max[m] = prefix_max[k];
    }
  }
  // Blocks built this way are sorted and ordered by least element, which is
  // the lexicographic order for disjoint sorted blocks.
  std::sort(out.begin(), out.end());
  return out;
}

NodeId MergerGraph::node(const Partition& p) const {
  auto it = index.find(p);
  if (it == index.end()) throw InvalidArgument("unknown partition");
  return it->second;
}

namespace {

Partition merge_blocks(const Partition& p, std::size_t x, std::size_t y) {
  Partition q;
  std::vector<int> merged = p[x];
  merged.insert(merged.end(), p[y].begin(), p[y].end());
  std::sort(merged.begin(), merged.end());
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k != x && k != y) q.push_back(p[k]);
  }
  q.push_back(std::move(merged));
  std::sort(q.begin(), q.end());
  return q;
}

}  // namespace

MergerGraph build_merger_graph(int players) {
  if (players < 2 || players > 8) {
    throw InvalidArgument("merger graph needs 2 <= N <= 8");
  }
  MergerGraph m;
  m.players = players;
  m.partitions = enumerate_partitions(players);
  std::vector<std::string> labels;
  for (NodeId s = 0; s < m.partitions.size(); ++s) {
    m.index.emplace(m.partitions[s], s);
    labels.push_back(partition_label(m.partitions[s]));
  }
  std::vector<Edge> edges;
  for (NodeId s = 0; s < m.partitions.size(); ++s) {
    const Partition& p = m.partitions[s];
    for (std::size_t x = 0; x < p.size(); ++x) {
      for (std::size_t y = x + 1; y < p.size(); ++y) {
        edges.push_back({s, m.index.at(merge_blocks(p, x, y)), 1.0});
      }
    }
  }
  m.graph = WeightedMultigraph(m.partitions.size(), std::move(edges),
                               std::move(labels));
  return m;
}

}  // namespace hodge
