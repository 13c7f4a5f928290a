#include "hodge/calculus.hpp"

#include "hodge/error.hpp"

namespace hodge {

namespace {

void require_vertex_size(const WeightedMultigraph& g, const VertexFunction& v) {
  if (v.size() != g.node_count()) {
    throw InvalidArgument("vertex function size does not match graph");
  }
}

void require_edge_size(const WeightedMultigraph& g, const EdgeFlow& f) {
  if (f.size() != g.edge_count()) {
    throw InvalidArgument("edge flow size does not match graph");
  }
}

}  // namespace

VertexFunction as_vertex_function(const CoalitionGame& v) {
  return VertexFunction(std::vector<double>(v.values().begin(), v.values().end()));
}

EdgeFlow gradient(const WeightedMultigraph& g, const VertexFunction& v) {
  require_vertex_size(g, v);
  EdgeFlow f(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    f[e] = ed.is_loop() ? 0.0 : v[ed.b] - v[ed.a];
  }
  return f;
}

VertexFunction divergence(const WeightedMultigraph& g, const EdgeFlow& f) {
  require_edge_size(g, f);
  VertexFunction out(g.node_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) continue;
    const double flux = ed.weight * f[e];
    out[ed.b] += flux;  // forward orientation enters b
    out[ed.a] -= flux;  // reverse orientation enters a with value -f
  }
  return out;
}

VertexFunction laplacian_apply(const WeightedMultigraph& g,
                               const VertexFunction& v) {
  return divergence(g, gradient(g, v));
}

EdgeFlow partial_gradient(const Hypercube& h, const VertexFunction& v,
                          int player) {
  if (player < 0 || player >= h.players) {
    throw InvalidArgument("player out of range");
  }
  require_vertex_size(h.graph, v);
  EdgeFlow f(h.graph.edge_count());
  for (EdgeId e = 0; e < h.graph.edge_count(); ++e) {
    if (h.edge_player(e) != player) continue;
    const Edge& ed = h.graph.edge(e);
    f[e] = v[ed.b] - v[ed.a];
  }
  return f;
}

EdgeFlow partial_gradient(const Hypercube& h, const CoalitionGame& v,
                          int player) {
  if (v.players() != h.players) {
    throw InvalidArgument("game and hypercube disagree on player count");
  }
  return partial_gradient(h, as_vertex_function(v), player);
}

double edge_inner_product(const WeightedMultigraph& g, const EdgeFlow& f,
                          const EdgeFlow& h) {
  require_edge_size(g, f);
  require_edge_size(g, h);
  double sum = 0.0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    sum += g.edge(e).weight * f[e] * h[e];
  }
  return sum;
}

double vertex_inner_product(const VertexFunction& u, const VertexFunction& v) {
  if (u.size() != v.size()) throw InvalidArgument("vertex function sizes differ");
  double sum = 0.0;
  for (std::size_t s = 0; s < u.size(); ++s) sum += u[s] * v[s];
  return sum;
}

Eigen::SparseMatrix<double> incidence_matrix(const WeightedMultigraph& g) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(2 * g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) continue;
    const auto row = static_cast<Eigen::Index>(e);
    entries.emplace_back(row, static_cast<Eigen::Index>(ed.a), -1.0);
    entries.emplace_back(row, static_cast<Eigen::Index>(ed.b), 1.0);
  }
  Eigen::SparseMatrix<double> d(static_cast<Eigen::Index>(g.edge_count()),
                                static_cast<Eigen::Index>(g.node_count()));
  d.setFromTriplets(entries.begin(), entries.end());
  return d;
}

Eigen::VectorXd edge_weights(const WeightedMultigraph& g) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    w[static_cast<Eigen::Index>(e)] = g.edge(e).weight;
  }
  return w;
}

Eigen::SparseMatrix<double> laplacian_matrix(const WeightedMultigraph& g) {
  const Eigen::SparseMatrix<double> d = incidence_matrix(g);
  Eigen::SparseMatrix<double> l = d.transpose() * edge_weights(g).asDiagonal() * d;
  l.makeCompressed();
  return l;
}

}  // namespace hodge
