#include "hodge/shapley.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "hodge/error.hpp"

namespace hodge {

namespace {

// k!(N-1-k)!/N! = 1 / (N * C(N-1, k)).
std::vector<double> coalition_weights(int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  double binom = 1.0;  // C(n-1, k)
  for (int k = 0; k < n; ++k) {
    w[k] = 1.0 / (n * binom);
    binom = binom * (n - 1 - k) / (k + 1);
  }
  return w;
}

void require_permutation_size(int n) {
  if (n > kMaxPermutationPlayers) {
    throw InvalidArgument("permutation enumeration is capped at N = 9");
  }
}

// Calls visit(j, S) for every step S -> S u {j} of every join order.
template <typename Visit>
double for_each_join_order(int n, Visit&& visit) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  double count = 0.0;
  do {
    Coalition s = 0;
    for (int j : order) {
      visit(j, s);
      s = with_player(s, j);
    }
    count += 1.0;
  } while (std::next_permutation(order.begin(), order.end()));
  return count;
}

}  // namespace

AllocationVector shapley(const CoalitionGame& v) {
  const int n = v.players();
  const std::vector<double> w = coalition_weights(n);
  AllocationVector phi(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (Coalition s = 0; s <= v.grand(); ++s) {
      if (contains(s, i)) continue;
      sum += w[std::popcount(s)] * (v(with_player(s, i)) - v(s));
    }
    phi[i] = sum;
  }
  return phi;
}

AllocationVector shapley_by_permutation(const CoalitionGame& v) {
  const int n = v.players();
  require_permutation_size(n);
  AllocationVector phi(static_cast<std::size_t>(n), 0.0);
  const double count = for_each_join_order(n, [&](int j, Coalition s) {
    phi[j] += v(with_player(s, j)) - v(s);
  });
  for (double& x : phi) x /= count;
  return phi;
}

double f_shapley(const Hypercube& h, const EdgeFlow& f) {
  require_permutation_size(h.players);
  if (f.size() != h.graph.edge_count()) {
    throw InvalidArgument("flow is not sized to the coalition hypercube");
  }
  double sum = 0.0;
  const double count = for_each_join_order(h.players, [&](int j, Coalition s) {
    sum += f[h.edge(s, j)];
  });
  return sum / count;
}

double f_shapley(const EdgeFlow& f, int players) {
  return f_shapley(build_hypercube(players), f);
}

EdgeFlow alpha_flow(const Hypercube& h, const CoalitionGame& v, int player,
                    double alpha) {
  const int n = h.players;
  if (v.players() != n) {
    throw InvalidArgument("game and hypercube disagree on player count");
  }
  if (player < 0 || player >= n) throw InvalidArgument("player out of range");
  if (n == 1 && alpha != 1.0) {
    throw InvalidArgument("alpha flow with one player requires alpha = 1");
  }
  const double others = n == 1 ? 0.0 : (1.0 - alpha) / (n - 1);
  EdgeFlow f(h.graph.edge_count());
  for (EdgeId e = 0; e < h.graph.edge_count(); ++e) {
    const Coalition s = h.edge_base(e);
    const int j = h.edge_player(e);
    const double marginal = v(with_player(s, j)) - v(s);
    f[e] = (j == player ? alpha : others) * marginal;
  }
  return f;
}

EdgeFlow alpha_flow(const CoalitionGame& v, int player, double alpha) {
  return alpha_flow(build_hypercube(v.players()), v, player, alpha);
}

double alpha_shapley(const Hypercube& h, const CoalitionGame& v, int player,
                     double alpha) {
  return f_shapley(h, alpha_flow(h, v, player, alpha));
}

double alpha_shapley(const CoalitionGame& v, int player, double alpha) {
  return alpha_shapley(build_hypercube(v.players()), v, player, alpha);
}

}  // namespace hodge
