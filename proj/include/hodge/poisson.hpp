#pragma once

#include <memory>
#include <vector>

#include "hodge/calculus.hpp"
#include "hodge/graph.hpp"

namespace hodge {

/// Solution of d*d V = d* f anchored at V(base) = 0.
struct PoissonSolution {
  VertexFunction values;
  NodeId base = 0;
  double residual_norm = 0.0;  // ||d*d V - d* f||_2
};

struct PoissonOptions {
  /// Graphs with more nodes than this use conjugate gradients instead of a
  /// sparse LDL^T factorization.
  std::size_t direct_limit = std::size_t{1} << 14;
  double cg_tolerance = 1e-12;
  /// A solve fails when residual > failure_tolerance * ||d* f|| + 1e-12.
  double failure_tolerance = 1e-8;
};

/// Factorizes the grounded system once for a (graph, base) pair and then
/// solves for any number of flows.
///
/// The grounded system is the weighted incidence least-squares problem
/// min ||diag(lambda)^{1/2} (D_0 w - f)|| with the base column of D deleted;
/// its normal equations D_0^T diag(lambda) D_0 w = D_0^T diag(lambda) f are
/// the Laplacian with the base row and column removed, which is SPD on a
/// connected graph. The graph must outlive the solver.
class PoissonSolver {
 public:
  /// Throws DisconnectedGraph when `g` is not connected and
  /// InvalidArgument when `base` is out of range.
  PoissonSolver(const WeightedMultigraph& g, NodeId base,
                PoissonOptions options = {});
  ~PoissonSolver();
  PoissonSolver(PoissonSolver&&) noexcept;
  PoissonSolver& operator=(PoissonSolver&&) noexcept;

  PoissonSolution solve(const EdgeFlow& f) const;

  NodeId base() const { return base_; }
  bool uses_direct_solver() const;

 private:
  struct Impl;
  const WeightedMultigraph* graph_;
  NodeId base_;
  PoissonOptions options_;
  std::unique_ptr<Impl> impl_;
};

PoissonSolution solve_poisson(const WeightedMultigraph& g, const EdgeFlow& f,
                              NodeId base, PoissonOptions options = {});

/// Per-player functions on a coalition hypercube (component i is player i).
using AllocationTable = std::vector<VertexFunction>;

/// Component games v_i: d*d v_i = d* d_i v with v_i(empty) = 0.
AllocationTable component_games(const CoalitionGame& v);
AllocationTable component_games(const Hypercube& h, const CoalitionGame& v);

/// Row i solves d*d V_i = d* f_{alpha,i} with V_i(empty) = 0, where
/// f_{alpha,i} is player i's alpha flow. alpha = 1 reproduces
/// component_games.
AllocationTable alpha_component_games(const Hypercube& h, const CoalitionGame& v,
                                      double alpha);
AllocationTable alpha_component_games(const CoalitionGame& v, double alpha);

/// Expected path integral of f for the reversible walk started at `start`,
/// as a function of the target node.
VertexFunction hodge_allocation(const WeightedMultigraph& g, const EdgeFlow& f,
                                NodeId start);

}  // namespace hodge
