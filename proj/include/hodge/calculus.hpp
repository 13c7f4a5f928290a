#pragma once

#include <Eigen/SparseCore>
#include <cstddef>
#include <vector>

#include "hodge/graph.hpp"

namespace hodge {

/// Real function on the nodes of a graph, indexed by NodeId.
struct VertexFunction {
  std::vector<double> values;

  VertexFunction() = default;
  explicit VertexFunction(std::size_t n, double fill = 0.0) : values(n, fill) {}
  explicit VertexFunction(std::vector<double> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  double& operator[](NodeId s) { return values[s]; }
  double operator[](NodeId s) const { return values[s]; }
};

VertexFunction as_vertex_function(const CoalitionGame& v);

/// Alternating edge flow. Only forward values are stored; the reverse
/// orientation always reads as the negation.
struct EdgeFlow {
  std::vector<double> forward_values;

  EdgeFlow() = default;
  explicit EdgeFlow(std::size_t m, double fill = 0.0) : forward_values(m, fill) {}
  explicit EdgeFlow(std::vector<double> v) : forward_values(std::move(v)) {}

  std::size_t size() const { return forward_values.size(); }
  double at(OrientedEdge e) const {
    const double x = forward_values.at(e.edge);
    return e.forward() ? x : -x;
  }
  double& operator[](EdgeId e) { return forward_values[e]; }
  double operator[](EdgeId e) const { return forward_values[e]; }
};

/// d v(e) = v(terminal) - v(initial) on forward orientations; zero on loops.
EdgeFlow gradient(const WeightedMultigraph& g, const VertexFunction& v);

/// d* f(S) = sum of lambda(e) f(e) over oriented edges e entering S from a
/// different node. Self-loops drop out.
VertexFunction divergence(const WeightedMultigraph& g, const EdgeFlow& f);

/// d* d v, matrix-free.
VertexFunction laplacian_apply(const WeightedMultigraph& g,
                               const VertexFunction& v);

/// d_i v: the gradient restricted to edges along which `player` joins.
EdgeFlow partial_gradient(const Hypercube& h, const VertexFunction& v,
                          int player);
EdgeFlow partial_gradient(const Hypercube& h, const CoalitionGame& v,
                          int player);

/// <f, h>_lambda over forward edges.
double edge_inner_product(const WeightedMultigraph& g, const EdgeFlow& f,
                          const EdgeFlow& h);

double vertex_inner_product(const VertexFunction& u, const VertexFunction& v);

/// Signed incidence matrix D (edge_count x node_count): row e holds -1 at the
/// initial node and +1 at the terminal node of the forward orientation, and
/// is empty for self-loops. Unweighted; pair with edge_weights().
Eigen::SparseMatrix<double> incidence_matrix(const WeightedMultigraph& g);

Eigen::VectorXd edge_weights(const WeightedMultigraph& g);

/// Weighted Laplacian D^T diag(lambda) D.
Eigen::SparseMatrix<double> laplacian_matrix(const WeightedMultigraph& g);

}  // namespace hodge
