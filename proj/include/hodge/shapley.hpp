#pragma once

#include <vector>

#include "hodge/calculus.hpp"
#include "hodge/graph.hpp"

namespace hodge {

/// Per-player allocation (phi_1, ..., phi_N), zero-based.
using AllocationVector = std::vector<double>;

/// Cap for anything that enumerates all N! join orders.
inline constexpr int kMaxPermutationPlayers = 9;

/// Subset-sum Shapley formula:
///   phi_i = sum_{S not containing i} |S|!(N-1-|S|)!/N! (v(S u i) - v(S)).
AllocationVector shapley(const CoalitionGame& v);

/// Average marginal contribution over all N! join orders. N <= 9.
AllocationVector shapley_by_permutation(const CoalitionGame& v);

/// Average over join orders of the flow summed along the increasing path
/// empty -> ... -> [N]. Throws InvalidArgument when the flow is not sized to
/// the hypercube or N > 9.
double f_shapley(const Hypercube& h, const EdgeFlow& f);
double f_shapley(const EdgeFlow& f, int players);

/// Marginal flow giving `player` the fraction alpha of its own marginal
/// value and (1 - alpha)/(N - 1) of every other player's. Any real alpha is
/// accepted; N = 1 requires alpha = 1.
EdgeFlow alpha_flow(const Hypercube& h, const CoalitionGame& v, int player,
                    double alpha);
EdgeFlow alpha_flow(const CoalitionGame& v, int player, double alpha);

double alpha_shapley(const Hypercube& h, const CoalitionGame& v, int player,
                     double alpha);
double alpha_shapley(const CoalitionGame& v, int player, double alpha);

}  // namespace hodge
