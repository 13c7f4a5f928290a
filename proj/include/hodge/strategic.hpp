#pragma once

#include <Eigen/Core>
#include <vector>

#include "hodge/graph.hpp"
#include "hodge/poisson.hpp"
#include "hodge/shapley.hpp"

namespace hodge {

/// N-player game in normal form. payoffs[i] lists g^i over joint pure
/// actions flattened row-major over (a_1, ..., a_N), a_1 slowest.
class StrategicGame {
 public:
  StrategicGame() = default;
  /// Throws InvalidArgument on a bad shape or non-finite payoff.
  StrategicGame(std::vector<int> actions,
                std::vector<std::vector<double>> payoffs);

  int players() const { return static_cast<int>(actions_.size()); }
  const std::vector<int>& actions() const { return actions_; }
  const std::vector<std::vector<double>>& payoffs() const { return payoffs_; }
  std::size_t profiles() const { return profiles_; }

  double payoff(int player, std::size_t profile) const;
  /// Flat index of a joint action vector.
  std::size_t profile_index(const std::vector<int>& joint) const;
  std::vector<int> profile_actions(std::size_t profile) const;

 private:
  std::vector<int> actions_;
  std::vector<std::vector<double>> payoffs_;
  std::size_t profiles_ = 0;
};

/// Upper bound on joint pure profiles accepted by StrategicGame.
inline constexpr std::size_t kMaxProfiles = std::size_t{1} << 16;

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row_strategy;  // maximizer
  std::vector<double> col_strategy;  // minimizer
};

/// Value and optimal mixed strategies of the zero-sum game where the row
/// player maximizes x^T M y. Solved as a linear program by dense simplex
/// with Bland's rule. Throws NumericalFailure when the certified duality
/// gap exceeds 1e-8 (scaled by max(1, max|M|)).
MatrixGameSolution matrix_game_value(const Eigen::MatrixXd& m);

/// Zero-sum matrix of coalition S against its complement: rows are joint
/// actions of S, columns those of [N] \ S (each flattened with the lowest
/// player slowest), entries sum_{i in S} g^i - sum_{i not in S} g^i.
Eigen::MatrixXd threat_matrix(const StrategicGame& g, Coalition s);

/// delta G(S). S = [N] gives the best total payoff and S = empty its
/// negation.
double threat_power(const StrategicGame& g, Coalition s);

/// delta G over all 2^N coalitions, indexed by bitmask.
std::vector<double> threat_powers(const StrategicGame& g);

/// v(S) = (delta G(S) + delta G([N])) / 2.
CoalitionGame induced_coalition_game(const StrategicGame& g);

/// gamma_i = average over join orders of delta G(players up to and
/// including i). N <= 9.
AllocationVector kn_value(const StrategicGame& g);

/// Component table of the induced game under the alpha flow of each player:
/// row i solves d*d V_i = d* f_{alpha,i} with V_i(empty) = 0.
AllocationTable extended_kn_value(const StrategicGame& g, double alpha);

}  // namespace hodge
