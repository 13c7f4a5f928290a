#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hodge/calculus.hpp"
#include "hodge/graph.hpp"
#include "hodge/strategic.hpp"

namespace testing {

using namespace hodge;

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline CoalitionGame random_game(int n, Rng& rng) {
  return CoalitionGame::from_function(
      n, [&](Coalition s) { return s == 0 ? 0.0 : uniform(rng, -2.0, 2.0); });
}

inline EdgeFlow random_flow(std::size_t m, Rng& rng) {
  EdgeFlow f(m);
  for (double& x : f.forward_values) x = uniform(rng);
  return f;
}

inline VertexFunction random_vertex_function(std::size_t n, Rng& rng) {
  VertexFunction v(n);
  for (double& x : v.values) x = uniform(rng);
  return v;
}

/// Connected multigraph on `nodes` nodes: a random spanning tree plus extra
/// edges that include at least one parallel edge and one self-loop.
inline WeightedMultigraph random_multigraph(std::size_t nodes, Rng& rng) {
  std::vector<Edge> edges;
  auto weight = [&] { return uniform(rng, 0.25, 3.0); };
  for (std::size_t s = 1; s < nodes; ++s) {
    const auto t = static_cast<NodeId>(uniform_int(rng, 0, static_cast<int>(s) - 1));
    edges.push_back({t, s, weight()});
  }
  const Edge first = edges.empty() ? Edge{0, 0, 1.0} : edges.front();
  if (!edges.empty()) edges.push_back({first.b, first.a, weight()});  // parallel
  const auto loop_at = static_cast<NodeId>(uniform_int(rng, 0, static_cast<int>(nodes) - 1));
  edges.push_back({loop_at, loop_at, weight()});
  const int extra = uniform_int(rng, 0, static_cast<int>(nodes));
  for (int k = 0; k < extra; ++k) {
    const auto a = static_cast<NodeId>(uniform_int(rng, 0, static_cast<int>(nodes) - 1));
    const auto b = static_cast<NodeId>(uniform_int(rng, 0, static_cast<int>(nodes) - 1));
    edges.push_back({a, b, weight()});
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return WeightedMultigraph(nodes, std::move(edges));
}

/// Five-node graph with three no-loop paths from S to T.
/// Nodes: S=0, T=1, U=2, V=3, W=4.
inline WeightedMultigraph three_path_graph() {
  return WeightedMultigraph(5,
                            {{0, 1, 1.0},
                             {0, 3, 1.0},
                             {3, 2, 1.0},
                             {3, 4, 1.0},
                             {4, 2, 1.0},
                             {2, 1, 1.0}},
                            {"S", "T", "U", "V", "W"});
}

inline StrategicGame random_strategic(int players, int max_actions, Rng& rng) {
  std::vector<int> actions;
  std::size_t profiles = 1;
  for (int i = 0; i < players; ++i) {
    actions.push_back(uniform_int(rng, 1, max_actions));
    profiles *= static_cast<std::size_t>(actions.back());
  }
  std::vector<std::vector<double>> payoffs(static_cast<std::size_t>(players));
  for (auto& g : payoffs) {
    for (std::size_t p = 0; p < profiles; ++p) g.push_back(uniform(rng, -3.0, 3.0));
  }
  return StrategicGame(actions, payoffs);
}

// ---------------------------------------------------------------------------
// Oracles. These are deliberately independent of the library's solvers.

/// Dense weighted Laplacian built edge by edge.
inline Eigen::MatrixXd dense_laplacian(const WeightedMultigraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    const auto a = static_cast<Eigen::Index>(e.a);
    const auto b = static_cast<Eigen::Index>(e.b);
    l(a, a) += e.weight;
    l(b, b) += e.weight;
    l(a, b) -= e.weight;
    l(b, a) -= e.weight;
  }
  return l;
}

/// Divergence d* f computed from the edge list.
inline Eigen::VectorXd dense_divergence(const WeightedMultigraph& g,
                                        const EdgeFlow& f) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.node_count()));
  for (EdgeId k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(k);
    if (e.is_loop()) continue;
    d(static_cast<Eigen::Index>(e.b)) += e.weight * f[k];
    d(static_cast<Eigen::Index>(e.a)) -= e.weight * f[k];
  }
  return d;
}

/// Minimum-norm least-squares solution of L V = d* f via complete orthogonal
/// decomposition, shifted so that V(base) = 0.
inline std::vector<double> pseudoinverse_solve(const WeightedMultigraph& g,
                                               const EdgeFlow& f, NodeId base) {
  const Eigen::MatrixXd l = dense_laplacian(g);
  const Eigen::VectorXd rhs = dense_divergence(g, f);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(l);
  cod.setThreshold(1e-12);
  Eigen::VectorXd v = cod.solve(rhs);
  v.array() -= v(static_cast<Eigen::Index>(base));
  return {v.data(), v.data() + v.size()};
}

/// Expected path integral of f from `start` until the first visit to
/// `target` (first return when they coincide), by first-step analysis on
/// the chain absorbed at `target`.
inline double absorbing_chain_value(const WeightedMultigraph& g,
                                    const EdgeFlow& f, NodeId start,
                                    NodeId target) {
  const std::size_t n = g.node_count();
  std::vector<Eigen::Index> idx(n, -1);
  Eigen::Index m = 0;
  for (NodeId x = 0; x < n; ++x) {
    if (x != target) idx[x] = m++;
  }
  // h(x) = sum_e p(e) (f(e) + h(terminal e)), h(target) = 0.
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  auto one_step = [&](NodeId x, Eigen::Index row, Eigen::MatrixXd* mat,
                      Eigen::VectorXd* vec, double* scalar) {
    double total = 0.0;
    for (const Edge& e : g.edges()) {
      if (e.a == x) total += e.weight;
      if (e.b == x) total += e.weight;
    }
    for (EdgeId k = 0; k < g.edge_count(); ++k) {
      const Edge& e = g.edge(k);
      for (int dir = 0; dir < 2; ++dir) {
        const NodeId from = dir == 0 ? e.a : e.b;
        const NodeId to = dir == 0 ? e.b : e.a;
        if (from != x) continue;
        const double p = e.weight / total;
        const double val = dir == 0 ? f[k] : -f[k];
        if (vec) (*vec)(row) += p * val;
        if (scalar) *scalar += p * val;
        if (to != target && mat) (*mat)(row, idx[to]) -= p;
      }
    }
  };
  for (NodeId x = 0; x < n; ++x) {
    if (x != target) one_step(x, idx[x], &a, &b, nullptr);
  }
  const Eigen::VectorXd h = a.partialPivLu().solve(b);
  if (start != target) return h(idx[start]);
  // First return: one step from the target, then absorbed on re-entry.
  double value = 0.0;
  Eigen::MatrixXd row = Eigen::MatrixXd::Zero(1, m);
  one_step(target, 0, &row, nullptr, &value);
  return value - (row * h)(0, 0);
}

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Bell numbers by the Stirling-number recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1).
inline std::size_t bell_number(int n) {
  std::vector<std::vector<std::size_t>> s(n + 1, std::vector<std::size_t>(n + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= i; ++k) s[i][k] = k * s[i - 1][k] + s[i - 1][k - 1];
  }
  std::size_t total = 0;
  for (int k = 0; k <= n; ++k) total += s[n][k];
  return total;
}

/// Value of a 2x2 zero-sum game by support enumeration.
inline double two_by_two_value(const Eigen::Matrix2d& m) {
  // Pure saddle point check.
  double best = -1e300;
  for (int r = 0; r < 2; ++r) best = std::max(best, std::min(m(r, 0), m(r, 1)));
  double worst = 1e300;
  for (int c = 0; c < 2; ++c) worst = std::min(worst, std::max(m(0, c), m(1, c)));
  if (std::abs(best - worst) < 1e-14) return best;
  // Fully mixed equilibrium.
  const double den = m(0, 0) - m(0, 1) - m(1, 0) + m(1, 1);
  return (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / den;
}

/// Permutation action on hypercube functions: (sigma v)(S) = v(sigma^{-1} S),
/// where sigma maps player i to sigma[i].
inline Coalition permute(Coalition s, const std::vector<int>& sigma) {
  Coalition out = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (contains(s, static_cast<int>(i))) out = with_player(out, sigma[i]);
  }
  return out;
}

}  // namespace testing
