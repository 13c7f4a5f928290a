#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "hodge/calculus.hpp"
#include "hodge/graph.hpp"

namespace hodge {

struct WalkConfig {
  std::uint64_t seed = 0;
  std::size_t episodes = 1;
  std::size_t max_steps_per_episode = 10'000'000;
};

/// Counter-based generator: output n of stream k is a SplitMix64 finalizer
/// applied to (key(seed, k) + n * golden gamma). Any (seed, stream) pair
/// gives the same sequence regardless of which thread draws it.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// A walk as an oriented-edge sequence; nodes are derived from `start`.
struct SamplePath {
  NodeId start = 0;
  std::vector<OrientedEdge> edges;

  std::size_t length() const { return edges.size(); }
  std::vector<NodeId> nodes(const WeightedMultigraph& g) const;
};

/// Transition law p(e) = lambda(e) / sum of lambda over oriented edges
/// leaving initial(e). Self-loops contribute both orientations.
std::vector<std::pair<OrientedEdge, double>> transition_probabilities(
    const WeightedMultigraph& g, NodeId s);

/// Precomputed sampler for the reversible walk on a graph. The graph must
/// outlive the walker.
class RandomWalk {
 public:
  explicit RandomWalk(const WeightedMultigraph& g);

  const WeightedMultigraph& graph() const { return *graph_; }
  OrientedEdge step(NodeId s, CounterRng& rng) const;
  /// Index of the sampled edge in this walker's edge table.
  std::size_t step_index(NodeId s, CounterRng& rng) const;

  /// First passage (first return when start == target) from start to
  /// target. Returns false and leaves `out` partially filled when the step
  /// cap is reached.
  bool first_passage(NodeId start, NodeId target, std::size_t max_steps,
                     CounterRng& rng, SamplePath& out) const;

  /// Path integral of f along a first-passage path, without storing the
  /// path. Returns false when the step cap is reached.
  bool first_passage_integral(NodeId start, NodeId target, const EdgeFlow& f,
                              std::size_t max_steps, CounterRng& rng,
                              double& integral) const;

 private:
  const WeightedMultigraph* graph_;
  std::vector<std::size_t> offsets_;
  std::vector<OrientedEdge> edges_;
  std::vector<NodeId> terminals_;
  std::vector<double> cumulative_;
};

/// One first-passage path drawn from stream `episode` of cfg.seed. Throws
/// StepCapExceeded past cfg.max_steps_per_episode.
SamplePath sample_path(const WeightedMultigraph& g, NodeId start,
                       NodeId target, const WalkConfig& cfg,
                       std::uint64_t episode = 0);

/// Sum of f over the path's oriented edges.
double path_integral(const EdgeFlow& f, const SamplePath& p);

struct ValueEstimate {
  double mean = 0.0;
  double standard_error = 0.0;  // sample stddev / sqrt(episodes)
  std::size_t episodes = 0;     // episodes that reached the target
  std::size_t discarded = 0;    // episodes that hit the step cap
};

/// Monte Carlo estimate of the expected path integral of f from start to
/// target. Episodes run on up to thread_count() threads; the result depends
/// only on (seed, episodes). Throws StepCapExceeded when more than 1% of
/// episodes are discarded.
ValueEstimate estimate_value(const WeightedMultigraph& g, const EdgeFlow& f,
                             NodeId start, NodeId target,
                             const WalkConfig& cfg);

/// Chronological loop erasure. The final step into the path's last node is
/// kept, so a first-return path erases to a simple cycle.
SamplePath loop_erase(const WeightedMultigraph& g, const SamplePath& p);

inline constexpr std::size_t kDefaultPathLimit = 1'000'000;

/// Every edge path from start to target with pairwise distinct nodes, except
/// that the last node may equal the first. Throws EnumerationLimit when
/// more than `limit` paths exist.
std::vector<SamplePath> enumerate_noloop_paths(
    const WeightedMultigraph& g, NodeId start, NodeId target,
    std::size_t limit = kDefaultPathLimit);

struct WeightedPath {
  SamplePath path;
  double weight = 0.0;
};

/// Probability that the loop erasure of a first-passage path equals each
/// no-loop path. Computed exactly: a path x_0..x_k has weight
///   prod_j G_j(x_j, x_j) p(e_{j+1}),
/// where G_j is the Green's function of the walk killed on
/// {target, x_0, ..., x_{j-1}}.
std::vector<WeightedPath> noloop_weights(const WeightedMultigraph& g,
                                         NodeId start, NodeId target,
                                         std::size_t limit = kDefaultPathLimit);

/// Finite form of the expected path integral: sum of weight * integral over
/// no-loop paths.
double reduced_value(const WeightedMultigraph& g, const EdgeFlow& f,
                     NodeId start, NodeId target,
                     std::size_t limit = kDefaultPathLimit);

/// Node-level transition matrix p_{S,T} (parallel edges summed, loops on
/// the diagonal).
Eigen::MatrixXd node_transition_matrix(const WeightedMultigraph& g);

/// pi_S proportional to the total weight leaving S.
VertexFunction stationary_distribution(const WeightedMultigraph& g);

/// Product of p(e) along an oriented-edge sequence.
double path_probability(const WeightedMultigraph& g,
                        const std::vector<OrientedEdge>& edges);

/// Worker thread cap: HODGE_ALLOC_THREADS when set to a positive integer,
/// otherwise the hardware concurrency.
unsigned thread_count();

}  // namespace hodge
