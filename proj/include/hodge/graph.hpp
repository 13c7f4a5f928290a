#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace hodge {

/// Dense index into a graph's node table, in [0, node_count).
using NodeId = std::size_t;
/// Dense index into a graph's edge table, in [0, edge_count).
using EdgeId = std::size_t;

enum class Direction : std::uint8_t { kForward, kReverse };

/// One of the two orientations of an undirected edge. For a self-loop both
/// orientations share their endpoints but remain distinct values.
struct OrientedEdge {
  EdgeId edge = 0;
  Direction direction = Direction::kForward;

  OrientedEdge reversed() const {
    return {edge, direction == Direction::kForward ? Direction::kReverse
                                                   : Direction::kForward};
  }
  bool forward() const { return direction == Direction::kForward; }

  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

/// Undirected edge with a positive weight; its forward orientation runs a -> b.
struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  double weight = 1.0;

  bool is_loop() const { return a == b; }
};

/// Finite multigraph with weighted edges. Parallel edges and self-loops are
/// allowed and every edge carries both orientations. Immutable once built.
class WeightedMultigraph {
 public:
  WeightedMultigraph() = default;

  /// Throws InvalidArgument on an out-of-range endpoint, a non-positive or
  /// non-finite weight, or a label count that does not match `nodes`.
  /// Missing labels default to the decimal node index.
  WeightedMultigraph(std::size_t nodes, std::vector<Edge> edges,
                     std::vector<std::string> labels = {});

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  const Edge& edge(EdgeId e) const;
  std::span<const Edge> edges() const { return edges_; }
  const std::string& label(NodeId s) const;
  std::span<const std::string> labels() const { return labels_; }

  NodeId initial(OrientedEdge e) const;
  NodeId terminal(OrientedEdge e) const;
  double weight(OrientedEdge e) const { return edge(e.edge).weight; }

  /// Oriented edges whose initial node is `s`; a self-loop at `s` shows up
  /// once per orientation. Order: by EdgeId, forward before reverse.
  std::span<const OrientedEdge> outgoing(NodeId s) const;

  /// Sum of weights over `outgoing(s)`.
  double total_weight(NodeId s) const;

  bool is_connected() const;

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> out_offsets_;
  std::vector<OrientedEdge> out_edges_;
};

WeightedMultigraph construct_graph(std::size_t nodes, std::vector<Edge> edges);

std::span<const OrientedEdge> incident_oriented_edges(
    const WeightedMultigraph& g, NodeId s);

/// Subset of players as a bitmask: bit i set means player i (zero-based) is
/// in the coalition.
using Coalition = std::uint32_t;

inline constexpr int kMaxPlayers = 20;

inline constexpr Coalition grand_coalition(int players) {
  return players >= 32 ? ~Coalition{0} : (Coalition{1} << players) - 1;
}
inline constexpr bool contains(Coalition s, int player) {
  return ((s >> player) & 1U) != 0;
}
inline constexpr Coalition with_player(Coalition s, int player) {
  return s | (Coalition{1} << player);
}
inline constexpr Coalition without_player(Coalition s, int player) {
  return s & ~(Coalition{1} << player);
}

/// "{1,3}" style, players rendered one-based.
std::string coalition_label(Coalition s);

/// Value function v on all subsets of N players with v(empty) = 0.
class CoalitionGame {
 public:
  CoalitionGame() = default;
  /// `values` is indexed by bitmask and must have 2^players entries.
  CoalitionGame(int players, std::vector<double> values);

  static CoalitionGame from_function(int players,
                                     const std::function<double(Coalition)>& v);

  int players() const { return players_; }
  std::size_t size() const { return values_.size(); }
  Coalition grand() const { return grand_coalition(players_); }
  double operator()(Coalition s) const { return values_[s]; }
  double value(Coalition s) const;
  std::span<const double> values() const { return values_; }

 private:
  int players_ = 0;
  std::vector<double> values_;
};

/// Coalition hypercube. NodeId equals the coalition bitmask and edge
/// (S, S u {i}) is oriented forward in the inclusion direction.
struct Hypercube {
  int players = 0;
  WeightedMultigraph graph;

  NodeId node(Coalition s) const { return static_cast<NodeId>(s); }
  /// Edge (s, s u {player}); `s` must not contain `player`.
  EdgeId edge(Coalition s, int player) const;
  /// The player that joins along the forward orientation of `e`.
  int edge_player(EdgeId e) const { return edge_player_.at(e); }
  /// The smaller endpoint of `e` (the coalition before the player joins).
  Coalition edge_base(EdgeId e) const {
    return static_cast<Coalition>(graph.edge(e).a);
  }

  std::vector<EdgeId> edge_index_;  // [s * players + i]
  std::vector<int> edge_player_;
};

Hypercube build_hypercube(int players);

/// Set partition of {0..n-1}: blocks sorted, and blocks ordered
/// lexicographically.
using Partition = std::vector<std::vector<int>>;

/// "{1}{2,3}" style, players rendered one-based.
std::string partition_label(const Partition& p);

/// All set partitions of {0..n-1} in canonical form, sorted lexicographically.
std::vector<Partition> enumerate_partitions(int n);

/// Graph of set partitions where edges join P to every partition obtained
/// from P by merging two of its blocks (forward = merge direction).
struct MergerGraph {
  int players = 0;
  WeightedMultigraph graph;
  std::vector<Partition> partitions;  // indexed by NodeId
  std::map<Partition, NodeId> index;

  NodeId node(const Partition& p) const;
};

MergerGraph build_merger_graph(int players);

}  // namespace hodge
