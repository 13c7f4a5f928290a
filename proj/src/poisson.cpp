#include "hodge/poisson.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <variant>

#include "hodge/error.hpp"
#include "hodge/shapley.hpp"

namespace hodge {

using SparseMatrix = Eigen::SparseMatrix<double>;
using DirectSolver = Eigen::SimplicialLDLT<SparseMatrix>;
using IterativeSolver =
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper>;

struct PoissonSolver::Impl {
  SparseMatrix grounded;
  std::variant<std::unique_ptr<DirectSolver>, std::unique_ptr<IterativeSolver>>
      solver;
};

namespace {

// Row/column of node s in the grounded system (base removed).
inline Eigen::Index grounded_index(NodeId s, NodeId base) {
  return static_cast<Eigen::Index>(s < base ? s : s - 1);
}

double norm2(const VertexFunction& v) {
  double sum = 0.0;
  for (double x : v.values) sum += x * x;
  return std::sqrt(sum);
}

}  // namespace

PoissonSolver::PoissonSolver(const WeightedMultigraph& g, NodeId base,
                             PoissonOptions options)
    : graph_(&g), base_(base), options_(options), impl_(std::make_unique<Impl>()) {
  if (base >= g.node_count()) throw InvalidArgument("base node out of range");
  if (!g.is_connected()) {
    throw DisconnectedGraph("Poisson solve needs a connected graph");
  }
  const auto n = static_cast<Eigen::Index>(g.node_count() - 1);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(4 * g.edge_count());
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    const bool a_free = e.a != base;
    const bool b_free = e.b != base;
    const Eigen::Index ia = a_free ? grounded_index(e.a, base) : -1;
    const Eigen::Index ib = b_free ? grounded_index(e.b, base) : -1;
    if (a_free) entries.emplace_back(ia, ia, e.weight);
    if (b_free) entries.emplace_back(ib, ib, e.weight);
    if (a_free && b_free) {
      entries.emplace_back(ia, ib, -e.weight);
      entries.emplace_back(ib, ia, -e.weight);
    }
  }
  impl_->grounded.resize(n, n);
  impl_->grounded.setFromTriplets(entries.begin(), entries.end());
  impl_->grounded.makeCompressed();

  if (n == 0) return;
  if (g.node_count() <= options_.direct_limit) {
    auto direct = std::make_unique<DirectSolver>(impl_->grounded);
    if (direct->info() != Eigen::Success) {
      throw NumericalFailure("LDL^T factorization of grounded Laplacian failed");
    }
    impl_->solver = std::move(direct);
  } else {
    auto cg = std::make_unique<IterativeSolver>();
    cg->setTolerance(options_.cg_tolerance);
    cg->setMaxIterations(static_cast<Eigen::Index>(10 * g.node_count()));
    cg->compute(impl_->grounded);
    impl_->solver = std::move(cg);
  }
}

PoissonSolver::~PoissonSolver() = default;
PoissonSolver::PoissonSolver(PoissonSolver&&) noexcept = default;
PoissonSolver& PoissonSolver::operator=(PoissonSolver&&) noexcept = default;

bool PoissonSolver::uses_direct_solver() const {
  return std::holds_alternative<std::unique_ptr<DirectSolver>>(impl_->solver);
}

PoissonSolution PoissonSolver::solve(const EdgeFlow& f) const {
  const WeightedMultigraph& g = *graph_;
  const VertexFunction rhs = divergence(g, f);
  PoissonSolution out;
  out.base = base_;
  out.values = VertexFunction(g.node_count());

  const auto n = impl_->grounded.rows();
  if (n > 0) {
    Eigen::VectorXd b(n);
    for (NodeId s = 0; s < g.node_count(); ++s) {
      if (s != base_) b[grounded_index(s, base_)] = rhs[s];
    }
    Eigen::VectorXd w;
    if (uses_direct_solver()) {
      w = std::get<std::unique_ptr<DirectSolver>>(impl_->solver)->solve(b);
    } else {
      const auto& cg = std::get<std::unique_ptr<IterativeSolver>>(impl_->solver);
      w = cg->solve(b);
      if (cg->info() != Eigen::Success) {
        throw NumericalFailure("conjugate gradients did not converge");
      }
    }
    for (NodeId s = 0; s < g.node_count(); ++s) {
      if (s != base_) out.values[s] = w[grounded_index(s, base_)];
    }
  }

  VertexFunction r = laplacian_apply(g, out.values);
  for (NodeId s = 0; s < g.node_count(); ++s) r[s] -= rhs[s];
  out.residual_norm = norm2(r);
  if (!std::isfinite(out.residual_norm) ||
      out.residual_norm > options_.failure_tolerance * norm2(rhs) + 1e-12) {
    throw NumericalFailure("Poisson residual " +
                           std::to_string(out.residual_norm) +
                           " exceeds tolerance");
  }
  return out;
}

PoissonSolution solve_poisson(const WeightedMultigraph& g, const EdgeFlow& f,
                              NodeId base, PoissonOptions options) {
  return PoissonSolver(g, base, options).solve(f);
}

AllocationTable component_games(const Hypercube& h, const CoalitionGame& v) {
  if (v.players() != h.players) {
    throw InvalidArgument("game and hypercube disagree on player count");
  }
  const PoissonSolver solver(h.graph, h.node(0));
  AllocationTable table;
  table.reserve(static_cast<std::size_t>(v.players()));
  for (int i = 0; i < v.players(); ++i) {
    table.push_back(solver.solve(partial_gradient(h, v, i)).values);
  }
  return table;
}

AllocationTable component_games(const CoalitionGame& v) {
  return component_games(build_hypercube(v.players()), v);
}

AllocationTable alpha_component_games(const Hypercube& h, const CoalitionGame& v,
                                      double alpha) {
  if (v.players() != h.players) {
    throw InvalidArgument("game and hypercube disagree on player count");
  }
  const PoissonSolver solver(h.graph, h.node(0));
  AllocationTable table;
  table.reserve(static_cast<std::size_t>(v.players()));
  for (int i = 0; i < v.players(); ++i) {
    table.push_back(solver.solve(alpha_flow(h, v, i, alpha)).values);
  }
  return table;
}

AllocationTable alpha_component_games(const CoalitionGame& v, double alpha) {
  return alpha_component_games(build_hypercube(v.players()), v, alpha);
}

VertexFunction hodge_allocation(const WeightedMultigraph& g, const EdgeFlow& f,
                                NodeId start) {
  return solve_poisson(g, f, start).values;
}

}  // namespace hodge
