#include <doctest.h>

#include <cstdlib>
#include <map>
#include <set>

#include "hodge/error.hpp"
#include "hodge/poisson.hpp"
#include "hodge/walk.hpp"
#include "test_support.hpp"

using namespace hodge;

namespace {

std::vector<NodeId> nodes_of(const WeightedMultigraph& g, const SamplePath& p) {
  return p.nodes(g);
}

bool is_noloop(const std::vector<NodeId>& nodes) {
  std::set<NodeId> seen(nodes.begin(), nodes.end() - 1);
  if (seen.size() + 1 != nodes.size()) return false;
  // The last node may only repeat the first one.
  const NodeId last = nodes.back();
  return last == nodes.front() || !seen.count(last);
}

}  // namespace

TEST_SUITE("walk") {
  TEST_CASE("counter generator is reproducible per stream") {
    CounterRng a(42, 7);
    CounterRng b(42, 7);
    CounterRng c(42, 8);
    CounterRng d(43, 7);
    int differ_c = 0;
    int differ_d = 0;
    for (int k = 0; k < 100; ++k) {
      const std::uint64_t x = a.next();
      CHECK(x == b.next());
      differ_c += x != c.next();
      differ_d += x != d.next();
    }
    CHECK(differ_c == 100);
    CHECK(differ_d == 100);
    CounterRng u(1, 1);
    double mean = 0.0;
    for (int k = 0; k < 100000; ++k) {
      const double x = u.uniform();
      REQUIRE(x >= 0.0);
      REQUIRE(x < 1.0);
      mean += x;
    }
    CHECK(mean / 100000 == doctest::Approx(0.5).epsilon(0.01));
  }

  TEST_CASE("transition probabilities count loops in both orientations") {
    const WeightedMultigraph g(2, {{0, 1, 1.0}, {0, 0, 1.0}, {0, 1, 2.0}});
    const auto p = transition_probabilities(g, 0);
    REQUIRE(p.size() == 4);
    double total = 0.0;
    for (const auto& [e, q] : p) total += q;
    CHECK(total == doctest::Approx(1.0));
    CHECK(p[0].second == doctest::Approx(0.2));
    CHECK(p[1].second == doctest::Approx(0.2));
    CHECK(p[2].second == doctest::Approx(0.2));
    CHECK(p[3].second == doctest::Approx(0.4));
  }

  TEST_CASE("sampled paths are consecutive first passages") {
    testing::Rng rng(31);
    const WeightedMultigraph g = testing::random_multigraph(6, rng);
    for (std::uint64_t ep = 0; ep < 50; ++ep) {
      const SamplePath p = sample_path(g, 0, 5, {9, 1, 1'000'000}, ep);
      const auto nodes = nodes_of(g, p);
      CHECK(nodes.front() == 0);
      CHECK(nodes.back() == 5);
      for (std::size_t k = 0; k + 1 < nodes.size(); ++k) CHECK(nodes[k] != 5);
    }
    const SamplePath ret = sample_path(g, 2, 2, {9, 1, 1'000'000}, 3);
    const auto nodes = nodes_of(g, ret);
    CHECK(nodes.size() >= 2);
    CHECK(nodes.back() == 2);
  }

  TEST_CASE("step cap raises") {
    const WeightedMultigraph g(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    CHECK_THROWS_AS(sample_path(g, 0, 2, {1, 1, 1}, 0), StepCapExceeded);
    CHECK_THROWS_AS(estimate_value(g, EdgeFlow(2), 0, 2, {1, 100, 1}),
                    StepCapExceeded);
  }

  TEST_CASE("loop erasure by hand") {
    // 0 -e0- 1 -e1- 2 -e2- 3, plus a loop edge at 1.
    const WeightedMultigraph g(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {1, 1, 1.0}});
    const OrientedEdge f0{0, Direction::kForward}, f1{1, Direction::kForward},
        f2{2, Direction::kForward}, r1{1, Direction::kReverse},
        lp{3, Direction::kForward};
    SamplePath p{0, {f0, f1, r1, lp, f1, f2}};
    const SamplePath le = loop_erase(g, p);
    CHECK(nodes_of(g, le) == std::vector<NodeId>{0, 1, 2, 3});
    // First return keeps the final step.
    SamplePath back{1, {f1, r1}};
    CHECK(nodes_of(g, loop_erase(g, back)) == std::vector<NodeId>{1, 2, 1});
    SamplePath self{1, {lp}};
    CHECK(loop_erase(g, self).edges.size() == 1);
  }

  TEST_CASE("loop erasure of random paths has no loops") {
    testing::Rng rng(32);
    const WeightedMultigraph g = testing::random_multigraph(7, rng);
    for (std::uint64_t ep = 0; ep < 100; ++ep) {
      const NodeId t = ep % 7;
      const SamplePath p = sample_path(g, 0, t, {5, 1, 1'000'000}, ep);
      const auto nodes = nodes_of(g, loop_erase(g, p));
      CHECK(nodes.front() == 0);
      CHECK(nodes.back() == t);
      CHECK(is_noloop(nodes));
    }
  }

  TEST_CASE("three-path graph enumeration") {
    const WeightedMultigraph g = testing::three_path_graph();
    const auto paths = enumerate_noloop_paths(g, 0, 1);
    std::set<std::vector<NodeId>> got;
    for (const auto& p : paths) got.insert(nodes_of(g, p));
    const std::set<std::vector<NodeId>> expected{
        {0, 1}, {0, 3, 2, 1}, {0, 3, 4, 2, 1}};
    CHECK(got == expected);
  }

  TEST_CASE("enumeration guard") {
    const Hypercube h = build_hypercube(4);
    CHECK_THROWS_AS(enumerate_noloop_paths(h.graph, 0, 15, 10), EnumerationLimit);
  }

  TEST_CASE("two-player weights from the empty coalition to {1}") {
    const Hypercube h = build_hypercube(2);
    const auto w = noloop_weights(h.graph, 0, 1);
    REQUIRE(w.size() == 2);
    std::map<std::vector<NodeId>, double> by_nodes;
    for (const auto& wp : w) by_nodes[nodes_of(h.graph, wp.path)] = wp.weight;
    CHECK(by_nodes.at({0, 1}) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(by_nodes.at({0, 2, 3, 1}) == doctest::Approx(0.25).epsilon(1e-15));
  }

  TEST_CASE("no-loop weights form a distribution") {
    testing::Rng rng(33);
    for (int trial = 0; trial < 10; ++trial) {
      const WeightedMultigraph g = testing::random_multigraph(6, rng);
      for (NodeId t = 0; t < 6; ++t) {
        double total = 0.0;
        for (const auto& wp : noloop_weights(g, 0, t)) total += wp.weight;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("no-loop weights match loop-erased sampling") {
    testing::Rng rng(34);
    const WeightedMultigraph g = testing::random_multigraph(5, rng);
    for (NodeId t : {NodeId{0}, NodeId{4}}) {
      const auto exact = noloop_weights(g, 0, t);
      std::map<std::vector<NodeId>, double> expected;
      for (const auto& wp : exact) expected[nodes_of(g, wp.path)] += wp.weight;
      const std::size_t draws = 40000;
      std::map<std::vector<NodeId>, double> freq;
      for (std::uint64_t ep = 0; ep < draws; ++ep) {
        const SamplePath p = sample_path(g, 0, t, {77, 1, 1'000'000}, ep);
        freq[nodes_of(g, loop_erase(g, p))] += 1.0 / draws;
      }
      for (const auto& [path, f] : freq) CHECK(expected.count(path) == 1);
      for (const auto& [path, mu] : expected) {
        const double se = std::sqrt(mu * (1 - mu) / draws);
        const double got = freq.count(path) ? freq.at(path) : 0.0;
        CHECK(std::abs(got - mu) <= 4.5 * se + 1e-12);
      }
    }
  }

  TEST_CASE("reduced value equals the solver") {
    testing::Rng rng(35);
    for (int trial = 0; trial < 10; ++trial) {
      const WeightedMultigraph g = testing::random_multigraph(6, rng);
      const EdgeFlow f = testing::random_flow(g.edge_count(), rng);
      const VertexFunction v = hodge_allocation(g, f, 1);
      for (NodeId t = 0; t < 6; ++t) {
        CHECK(reduced_value(g, f, 1, t) == doctest::Approx(v[t]).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("Monte Carlo lands near the solver") {
    testing::Rng rng(36);
    const WeightedMultigraph g = testing::random_multigraph(5, rng);
    const EdgeFlow f = testing::random_flow(g.edge_count(), rng);
    const VertexFunction v = hodge_allocation(g, f, 0);
    for (NodeId t = 0; t < 5; ++t) {
      const ValueEstimate est = estimate_value(g, f, 0, t, {2024, 20000, 10'000'000});
      CHECK(est.episodes == 20000);
      CHECK(est.discarded == 0);
      CHECK(std::abs(est.mean - v[t]) <= 4.0 * est.standard_error + 1e-12);
    }
  }

  TEST_CASE("estimates do not depend on the thread count") {
    testing::Rng rng(37);
    const WeightedMultigraph g = testing::random_multigraph(6, rng);
    const EdgeFlow f = testing::random_flow(g.edge_count(), rng);
    const WalkConfig cfg{5, 30000, 10'000'000};
    setenv("HODGE_ALLOC_THREADS", "1", 1);
    const ValueEstimate a = estimate_value(g, f, 0, 3, cfg);
    setenv("HODGE_ALLOC_THREADS", "4", 1);
    const ValueEstimate b = estimate_value(g, f, 0, 3, cfg);
    unsetenv("HODGE_ALLOC_THREADS");
    CHECK(a.mean == b.mean);
    CHECK(a.standard_error == b.standard_error);
  }

  TEST_CASE("zero flow gives zero estimate") {
    const Hypercube h = build_hypercube(3);
    const ValueEstimate est =
        estimate_value(h.graph, EdgeFlow(h.graph.edge_count()), 0, 7, {1, 1000, 10'000'000});
    CHECK(est.mean == 0.0);
    CHECK(est.standard_error == 0.0);
  }

  TEST_CASE("detailed balance and loop reversal") {
    testing::Rng rng(38);
    for (int trial = 0; trial < 10; ++trial) {
      const WeightedMultigraph g = testing::random_multigraph(7, rng);
      const VertexFunction pi = stationary_distribution(g);
      const Eigen::MatrixXd p = node_transition_matrix(g);
      for (Eigen::Index a = 0; a < 7; ++a) {
        for (Eigen::Index b = 0; b < 7; ++b) {
          CHECK(std::abs(pi[a] * p(a, b) - pi[b] * p(b, a)) < 1e-12);
        }
      }
      // pi is stationary.
      Eigen::VectorXd piv = Eigen::Map<const Eigen::VectorXd>(pi.values.data(), 7);
      CHECK(((p.transpose() * piv) - piv).cwiseAbs().maxCoeff() < 1e-12);
      // A closed walk and its reversal are equally likely.
      const SamplePath loop = sample_path(g, 2, 2, {static_cast<std::uint64_t>(trial), 1, 1'000'000});
      std::vector<OrientedEdge> rev;
      for (auto it = loop.edges.rbegin(); it != loop.edges.rend(); ++it) {
        rev.push_back(it->reversed());
      }
      const double forward = path_probability(g, loop.edges);
      CHECK(std::abs(forward - path_probability(g, rev)) <= 1e-12 * forward);
    }
  }

  TEST_CASE("disconnected graphs are rejected") {
    const WeightedMultigraph g(3, {{0, 1, 1.0}, {2, 2, 1.0}});
    CHECK_THROWS_AS(estimate_value(g, EdgeFlow(2), 0, 1, {}), DisconnectedGraph);
    CHECK_THROWS_AS(noloop_weights(g, 0, 1), DisconnectedGraph);
  }
}
