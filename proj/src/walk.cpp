#include "hodge/walk.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <thread>

#include "hodge/error.hpp"

namespace hodge {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void require_node(const WeightedMultigraph& g, NodeId s) {
  if (s >= g.node_count()) throw InvalidArgument("node id out of range");
}

void require_walkable(const WeightedMultigraph& g, NodeId start,
                      NodeId target) {
  require_node(g, start);
  require_node(g, target);
  if (!g.is_connected()) {
    throw DisconnectedGraph("random walk needs a connected graph");
  }
  if (g.edge_count() == 0) {
    throw InvalidArgument("random walk needs at least one edge");
  }
}

// Compensated running sum.
struct Neumaier {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

// Welford moments for one block of episodes.
struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t discarded = 0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
};

constexpr std::size_t kBlock = 4096;

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream + kGolden))) {}

std::uint64_t CounterRng::next() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<NodeId> SamplePath::nodes(const WeightedMultigraph& g) const {
  std::vector<NodeId> out;
  out.reserve(edges.size() + 1);
  out.push_back(start);
  for (OrientedEdge e : edges) {
    if (g.initial(e) != out.back()) {
      throw InvalidArgument("path edges are not consecutive");
    }
    out.push_back(g.terminal(e));
  }
  return out;
}

std::vector<std::pair<OrientedEdge, double>> transition_probabilities(
    const WeightedMultigraph& g, NodeId s) {
  const double total = g.total_weight(s);
  std::vector<std::pair<OrientedEdge, double>> out;
  for (OrientedEdge e : g.outgoing(s)) out.emplace_back(e, g.weight(e) / total);
  return out;
}

RandomWalk::RandomWalk(const WeightedMultigraph& g) : graph_(&g) {
  const std::size_t n = g.node_count();
  offsets_.reserve(n + 1);
  offsets_.push_back(0);
  for (NodeId s = 0; s < n; ++s) {
    const auto out = g.outgoing(s);
    double running = 0.0;
    for (OrientedEdge e : out) {
      running += g.weight(e);
      edges_.push_back(e);
      terminals_.push_back(g.terminal(e));
      cumulative_.push_back(running);
    }
    offsets_.push_back(edges_.size());
  }
}

std::size_t RandomWalk::step_index(NodeId s, CounterRng& rng) const {
  const std::size_t lo = offsets_[s];
  const std::size_t hi = offsets_[s + 1];
  if (lo == hi) throw InvalidArgument("walk reached a node with no edges");
  const double u = rng.uniform() * cumulative_[hi - 1];
  auto it = std::upper_bound(cumulative_.begin() + static_cast<long>(lo),
                             cumulative_.begin() + static_cast<long>(hi), u);
  const auto k = static_cast<std::size_t>(it - cumulative_.begin());
  return k >= hi ? hi - 1 : k;
}

OrientedEdge RandomWalk::step(NodeId s, CounterRng& rng) const {
  return edges_[step_index(s, rng)];
}

bool RandomWalk::first_passage(NodeId start, NodeId target,
                               std::size_t max_steps, CounterRng& rng,
                               SamplePath& out) const {
  out.start = start;
  out.edges.clear();
  NodeId s = start;
  for (std::size_t k = 0; k < max_steps; ++k) {
    const OrientedEdge e = step(s, rng);
    out.edges.push_back(e);
    s = graph_->terminal(e);
    if (s == target) return true;
  }
  return false;
}

bool RandomWalk::first_passage_integral(NodeId start, NodeId target,
                                        const EdgeFlow& f,
                                        std::size_t max_steps, CounterRng& rng,
                                        double& integral) const {
  Neumaier sum;
  NodeId s = start;
  for (std::size_t k = 0; k < max_steps; ++k) {
    const std::size_t k_edge = step_index(s, rng);
    const OrientedEdge e = edges_[k_edge];
    const double x = f.forward_values[e.edge];
    sum.add(e.forward() ? x : -x);
    s = terminals_[k_edge];
    if (s == target) {
      integral = sum.value();
      return true;
    }
  }
  return false;
}

SamplePath sample_path(const WeightedMultigraph& g, NodeId start,
                       NodeId target, const WalkConfig& cfg,
                       std::uint64_t episode) {
  require_walkable(g, start, target);
  RandomWalk walk(g);
  CounterRng rng(cfg.seed, episode);
  SamplePath p;
  if (!walk.first_passage(start, target, cfg.max_steps_per_episode, rng, p)) {
    throw StepCapExceeded("walk did not reach the target within " +
                          std::to_string(cfg.max_steps_per_episode) +
                          " steps");
  }
  return p;
}

double path_integral(const EdgeFlow& f, const SamplePath& p) {
  Neumaier sum;
  for (OrientedEdge e : p.edges) sum.add(f.at(e));
  return sum.value();
}

unsigned thread_count() {
  if (const char* env = std::getenv("HODGE_ALLOC_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

ValueEstimate estimate_value(const WeightedMultigraph& g, const EdgeFlow& f,
                             NodeId start, NodeId target,
                             const WalkConfig& cfg) {
  require_walkable(g, start, target);
  if (f.size() != g.edge_count()) {
    throw InvalidArgument("flow size does not match edge count");
  }
  if (cfg.episodes == 0) throw InvalidArgument("episodes must be positive");

  const RandomWalk walk(g);
  const std::size_t blocks = (cfg.episodes + kBlock - 1) / kBlock;
  std::vector<Moments> moments(blocks);

  // Episode k always uses stream k and lands in block k / kBlock, so the
  // block results and their ordered merge do not depend on the thread count.
  auto run_block = [&](std::size_t b) {
    Moments& m = moments[b];
    const std::size_t lo = b * kBlock;
    const std::size_t hi = std::min(cfg.episodes, lo + kBlock);
    for (std::size_t k = lo; k < hi; ++k) {
      CounterRng rng(cfg.seed, k);
      double x = 0.0;
      if (walk.first_passage_integral(start, target, f,
                                      cfg.max_steps_per_episode, rng, x)) {
        m.add(x);
      } else {
        ++m.discarded;
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(thread_count(), blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < blocks; b += workers) run_block(b);
      });
    }
    for (auto& t : pool) t.join();
  }

  // Chan et al. pairwise merge, in block order.
  Moments total;
  for (const Moments& m : moments) {
    total.discarded += m.discarded;
    if (m.n == 0) continue;
    if (total.n == 0) {
      total.n = m.n;
      total.mean = m.mean;
      total.m2 = m.m2;
      continue;
    }
    const double na = static_cast<double>(total.n);
    const double nb = static_cast<double>(m.n);
    const double d = m.mean - total.mean;
    const double n = na + nb;
    total.mean += d * nb / n;
    total.m2 += m.m2 + d * d * na * nb / n;
    total.n += m.n;
  }

  if (total.discarded * 100 > cfg.episodes || total.n == 0) {
    throw StepCapExceeded(std::to_string(total.discarded) + " of " +
                          std::to_string(cfg.episodes) +
                          " episodes hit the step cap");
  }

  ValueEstimate est;
  est.mean = total.mean;
  est.episodes = total.n;
  est.discarded = total.discarded;
  if (total.n > 1) {
    const double var = total.m2 / static_cast<double>(total.n - 1);
    est.standard_error = std::sqrt(var / static_cast<double>(total.n));
  }
  return est;
}

SamplePath loop_erase(const WeightedMultigraph& g, const SamplePath& p) {
  require_node(g, p.start);
  SamplePath out;
  out.start = p.start;
  std::vector<NodeId> nodes{p.start};
  std::vector<long> position(g.node_count(), -1);
  position[p.start] = 0;
  for (std::size_t k = 0; k < p.edges.size(); ++k) {
    const OrientedEdge e = p.edges[k];
    if (g.initial(e) != nodes.back()) {
      throw InvalidArgument("path edges are not consecutive");
    }
    const NodeId t = g.terminal(e);
    if (k + 1 == p.edges.size()) {
      out.edges.push_back(e);
      break;
    }
    if (position[t] >= 0) {
      const auto keep = static_cast<std::size_t>(position[t]);
      for (std::size_t m = keep + 1; m < nodes.size(); ++m) position[nodes[m]] = -1;
      nodes.resize(keep + 1);
      out.edges.resize(keep);
    } else {
      position[t] = static_cast<long>(nodes.size());
      nodes.push_back(t);
      out.edges.push_back(e);
    }
  }
  return out;
}

namespace {

// Depth-first enumeration of no-loop paths. A path's weight is the product
// of factor(x_j, nodes on the path so far) * p(e_{j+1}) over its steps.
class NoLoopSearch {
 public:
  NoLoopSearch(const WeightedMultigraph& g, NodeId target, std::size_t limit)
      : g_(g), target_(target), limit_(limit), on_path_(g.node_count(), false) {}

  template <typename Emit, typename Factor>
  void run(NodeId start, Emit&& emit, Factor&& factor) {
    path_.start = start;
    on_path_[start] = true;
    descend(start, 1.0, emit, factor);
  }

 private:
  template <typename Emit, typename Factor>
  void descend(NodeId u, double weight, Emit& emit, Factor& factor) {
    const double w_here = weight * factor(u, on_path_) / g_.total_weight(u);
    for (OrientedEdge e : g_.outgoing(u)) {
      const NodeId t = g_.terminal(e);
      const double w_next = w_here * g_.weight(e);
      path_.edges.push_back(e);
      if (t == target_) {
        if (++count_ > limit_) {
          throw EnumerationLimit("more than " + std::to_string(limit_) +
                                 " no-loop paths");
        }
        emit(path_, w_next);
      } else if (!on_path_[t]) {
        on_path_[t] = true;
        descend(t, w_next, emit, factor);
        on_path_[t] = false;
      }
      path_.edges.pop_back();
    }
  }

  const WeightedMultigraph& g_;
  NodeId target_;
  std::size_t limit_;
  std::size_t count_ = 0;
  std::vector<bool> on_path_;
  SamplePath path_;
};

}  // namespace

std::vector<SamplePath> enumerate_noloop_paths(const WeightedMultigraph& g,
                                               NodeId start, NodeId target,
                                               std::size_t limit) {
  require_node(g, start);
  require_node(g, target);
  std::vector<SamplePath> out;
  NoLoopSearch search(g, target, limit);
  search.run(
      start, [&](const SamplePath& p, double) { out.push_back(p); },
      [](NodeId, const std::vector<bool>&) { return 1.0; });
  return out;
}

Eigen::MatrixXd node_transition_matrix(const WeightedMultigraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (NodeId s = 0; s < g.node_count(); ++s) {
    const double total = g.total_weight(s);
    if (total == 0.0) continue;
    for (OrientedEdge e : g.outgoing(s)) {
      p(static_cast<Eigen::Index>(s),
        static_cast<Eigen::Index>(g.terminal(e))) += g.weight(e) / total;
    }
  }
  return p;
}

std::vector<WeightedPath> noloop_weights(const WeightedMultigraph& g,
                                         NodeId start, NodeId target,
                                         std::size_t limit) {
  require_walkable(g, start, target);
  const Eigen::MatrixXd p = node_transition_matrix(g);
  const std::size_t n = g.node_count();

  // G_D(u, u) for the walk killed outside D, where D excludes the target and
  // every earlier node on the path.
  std::map<std::pair<std::vector<bool>, NodeId>, double> cache;
  auto green = [&](NodeId u, const std::vector<bool>& on_path) -> double {
    if (u == target) return 1.0;
    std::vector<bool> alive_set(n, false);
    for (NodeId x = 0; x < n; ++x) {
      alive_set[x] = x != target && (!on_path[x] || x == u);
    }
    auto key = std::make_pair(std::move(alive_set), u);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    std::vector<Eigen::Index> alive;
    Eigen::Index row_u = 0;
    for (NodeId x = 0; x < n; ++x) {
      if (!key.first[x]) continue;
      if (x == u) row_u = static_cast<Eigen::Index>(alive.size());
      alive.push_back(static_cast<Eigen::Index>(x));
    }
    const auto m = static_cast<Eigen::Index>(alive.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index c = 0; c < m; ++c) a(r, c) -= p(alive[r], alive[c]);
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    rhs(row_u) = 1.0;
    const Eigen::VectorXd col = a.partialPivLu().solve(rhs);
    const double value = col(row_u);
    if (!std::isfinite(value) || value < 1.0 - 1e-9) {
      throw NumericalFailure("Green's function solve failed");
    }
    cache.emplace(std::move(key), value);
    return value;
  };

  std::vector<WeightedPath> out;
  NoLoopSearch search(g, target, limit);
  search.run(
      start,
      [&](const SamplePath& path, double w) { out.push_back({path, w}); },
      green);
  return out;
}

double reduced_value(const WeightedMultigraph& g, const EdgeFlow& f,
                     NodeId start, NodeId target, std::size_t limit) {
  if (f.size() != g.edge_count()) {
    throw InvalidArgument("flow size does not match edge count");
  }
  Neumaier sum;
  for (const WeightedPath& wp : noloop_weights(g, start, target, limit)) {
    sum.add(wp.weight * path_integral(f, wp.path));
  }
  return sum.value();
}

VertexFunction stationary_distribution(const WeightedMultigraph& g) {
  VertexFunction pi(g.node_count());
  double total = 0.0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    pi[s] = g.total_weight(s);
    total += pi[s];
  }
  if (total == 0.0) throw InvalidArgument("graph has no edges");
  for (double& x : pi.values) x /= total;
  return pi;
}

double path_probability(const WeightedMultigraph& g,
                        const std::vector<OrientedEdge>& edges) {
  double prob = 1.0;
  for (OrientedEdge e : edges) {
    prob *= g.weight(e) / g.total_weight(g.initial(e));
  }
  return prob;
}

}  // namespace hodge
