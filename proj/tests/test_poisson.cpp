#include <doctest.h>

#include <numeric>

#include "hodge/error.hpp"
#include "hodge/poisson.hpp"
#include "test_support.hpp"

using namespace hodge;

namespace {

CoalitionGame delta_game(int n) {
  return CoalitionGame::from_function(
      n, [n](Coalition s) { return s == grand_coalition(n) ? 1.0 : 0.0; });
}

}  // namespace

TEST_SUITE("poisson") {
  TEST_CASE("anchored solve matches the pseudoinverse oracle") {
    testing::Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t n = static_cast<std::size_t>(testing::uniform_int(rng, 2, 8));
      const WeightedMultigraph g = testing::random_multigraph(n, rng);
      const EdgeFlow f = testing::random_flow(g.edge_count(), rng);
      const NodeId base = static_cast<NodeId>(testing::uniform_int(rng, 0, static_cast<int>(n) - 1));
      const PoissonSolution sol = solve_poisson(g, f, base);
      const auto expected = testing::pseudoinverse_solve(g, f, base);
      CHECK(sol.values[base] == 0.0);
      CHECK(sol.residual_norm < 1e-9);
      for (NodeId s = 0; s < n; ++s) {
        CHECK(sol.values[s] == doctest::Approx(expected[s]).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("solution equals the absorbing-chain expectation") {
    testing::Rng rng(12);
    for (int trial = 0; trial < 15; ++trial) {
      const std::size_t n = static_cast<std::size_t>(testing::uniform_int(rng, 2, 7));
      const WeightedMultigraph g = testing::random_multigraph(n, rng);
      const EdgeFlow f = testing::random_flow(g.edge_count(), rng);
      const NodeId start = 0;
      const VertexFunction v = hodge_allocation(g, f, start);
      for (NodeId t = 0; t < n; ++t) {
        CHECK(v[t] == doctest::Approx(testing::absorbing_chain_value(g, f, start, t))
                          .epsilon(1e-9));
      }
    }
  }

  TEST_CASE("exact gradients are recovered") {
    testing::Rng rng(13);
    const WeightedMultigraph g = testing::random_multigraph(8, rng);
    const VertexFunction phi = testing::random_vertex_function(8, rng);
    const PoissonSolution sol = solve_poisson(g, gradient(g, phi), 3);
    for (NodeId s = 0; s < 8; ++s) {
      CHECK(sol.values[s] == doctest::Approx(phi[s] - phi[3]).epsilon(1e-12));
    }
  }

  TEST_CASE("disconnected graphs and bad anchors are rejected") {
    const WeightedMultigraph g(3, {{0, 1, 1.0}});
    CHECK_THROWS_AS(solve_poisson(g, EdgeFlow(1), 0), DisconnectedGraph);
    const WeightedMultigraph h(2, {{0, 1, 1.0}});
    CHECK_THROWS_AS(solve_poisson(h, EdgeFlow(1), 2), InvalidArgument);
    CHECK_THROWS_AS(solve_poisson(h, EdgeFlow(2), 0), InvalidArgument);
  }

  TEST_CASE("single node graph") {
    const WeightedMultigraph g(1, {{0, 0, 1.0}});
    const PoissonSolution sol = solve_poisson(g, EdgeFlow(1, 5.0), 0);
    CHECK(sol.values.size() == 1);
    CHECK(sol.values[0] == 0.0);
  }

  TEST_CASE("conjugate gradients agree with the direct factorization") {
    testing::Rng rng(14);
    const Hypercube h = build_hypercube(6);
    const EdgeFlow f = testing::random_flow(h.graph.edge_count(), rng);
    PoissonOptions cg;
    cg.direct_limit = 8;
    const PoissonSolver direct(h.graph, 0);
    const PoissonSolver iterative(h.graph, 0, cg);
    CHECK(direct.uses_direct_solver());
    CHECK_FALSE(iterative.uses_direct_solver());
    const PoissonSolution a = direct.solve(f);
    const PoissonSolution b = iterative.solve(f);
    for (NodeId s = 0; s < a.values.size(); ++s) {
      CHECK(a.values[s] == doctest::Approx(b.values[s]).epsilon(1e-9));
    }
  }

  TEST_CASE("large hypercube switches to conjugate gradients") {
    const Hypercube h = build_hypercube(15);
    const PoissonSolver solver(h.graph, 0);
    CHECK_FALSE(solver.uses_direct_solver());
    const CoalitionGame v = CoalitionGame::from_function(
        15, [](Coalition s) { return static_cast<double>(std::popcount(s)); });
    const PoissonSolution sol = solver.solve(partial_gradient(h, v, 0));
    // Additive game: v_0 is the indicator of player 0.
    CHECK(sol.values[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.values[2] == doctest::Approx(0.0).epsilon(1e-9));
  }

  TEST_CASE("two-player pure bargaining table") {
    const AllocationTable t = component_games(delta_game(2));
    CHECK(t[0][1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(t[0][2] == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(t[0][3] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t[1][1] == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(t[1][2] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(t[1][3] == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("components are efficient and grounded") {
    testing::Rng rng(15);
    for (int n = 1; n <= 5; ++n) {
      const CoalitionGame v = testing::random_game(n, rng);
      const AllocationTable t = component_games(v);
      for (Coalition s = 0; s <= v.grand(); ++s) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += t[i][s];
        CHECK(sum == doctest::Approx(v(s)).epsilon(1e-10));
      }
      for (int i = 0; i < n; ++i) CHECK(t[i][0] == 0.0);
    }
  }

  TEST_CASE("component games are equivariant under relabeling players") {
    testing::Rng rng(16);
    const int n = 4;
    std::vector<int> sigma{2, 0, 3, 1};
    const CoalitionGame v = testing::random_game(n, rng);
    // (sigma v)(sigma S) = v(S)
    std::vector<double> pv(v.size());
    for (Coalition s = 0; s <= v.grand(); ++s) pv[testing::permute(s, sigma)] = v(s);
    const CoalitionGame w(n, pv);
    const AllocationTable tv = component_games(v);
    const AllocationTable tw = component_games(w);
    for (int i = 0; i < n; ++i) {
      for (Coalition s = 0; s <= v.grand(); ++s) {
        CHECK(tw[sigma[i]][testing::permute(s, sigma)] ==
              doctest::Approx(tv[i][s]).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("re-anchoring obeys the transition identity") {
    testing::Rng rng(17);
    const Hypercube h = build_hypercube(3);
    const CoalitionGame v = testing::random_game(3, rng);
    const EdgeFlow f = partial_gradient(h, v, 1);
    for (int trial = 0; trial < 20; ++trial) {
      const NodeId u = static_cast<NodeId>(testing::uniform_int(rng, 0, 7));
      const NodeId s = static_cast<NodeId>(testing::uniform_int(rng, 0, 7));
      const NodeId t = static_cast<NodeId>(testing::uniform_int(rng, 0, 7));
      const VertexFunction vu = hodge_allocation(h.graph, f, u);
      const VertexFunction vs = hodge_allocation(h.graph, f, s);
      CHECK(vu[t] - vu[s] == doctest::Approx(vs[t]).epsilon(1e-10));
    }
  }

  TEST_CASE("alpha one reproduces the component games") {
    testing::Rng rng(18);
    const CoalitionGame v = testing::random_game(3, rng);
    const AllocationTable a = alpha_component_games(v, 1.0);
    const AllocationTable b = component_games(v);
    for (int i = 0; i < 3; ++i) {
      for (Coalition s = 0; s < 8; ++s) CHECK(a[i][s] == doctest::Approx(b[i][s]));
    }
  }
}
