#include "hodge/strategic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "hodge/error.hpp"

namespace hodge {

StrategicGame::StrategicGame(std::vector<int> actions,
                             std::vector<std::vector<double>> payoffs)
    : actions_(std::move(actions)), payoffs_(std::move(payoffs)) {
  if (actions_.empty() || actions_.size() > static_cast<std::size_t>(kMaxPlayers)) {
    throw InvalidArgument("strategic game needs 1 to 20 players");
  }
  profiles_ = 1;
  for (int m : actions_) {
    if (m < 1) throw InvalidArgument("every player needs at least one action");
    profiles_ *= static_cast<std::size_t>(m);
    if (profiles_ > kMaxProfiles) {
      throw InvalidArgument("too many joint action profiles");
    }
  }
  if (payoffs_.size() != actions_.size()) {
    throw InvalidArgument("need one payoff tensor per player");
  }
  for (std::size_t i = 0; i < payoffs_.size(); ++i) {
    if (payoffs_[i].size() != profiles_) {
      throw InvalidArgument("payoff tensor " + std::to_string(i + 1) +
                            " has " + std::to_string(payoffs_[i].size()) +
                            " entries, expected " + std::to_string(profiles_));
    }
    for (double x : payoffs_[i]) {
      if (!std::isfinite(x)) throw InvalidArgument("payoff not finite");
    }
  }
}

double StrategicGame::payoff(int player, std::size_t profile) const {
  if (player < 0 || player >= players() || profile >= profiles_) {
    throw InvalidArgument("payoff index out of range");
  }
  return payoffs_[player][profile];
}

std::size_t StrategicGame::profile_index(const std::vector<int>& joint) const {
  if (joint.size() != actions_.size()) {
    throw InvalidArgument("joint action has the wrong length");
  }
  std::size_t idx = 0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    if (joint[i] < 0 || joint[i] >= actions_[i]) {
      throw InvalidArgument("action out of range");
    }
    idx = idx * static_cast<std::size_t>(actions_[i]) +
          static_cast<std::size_t>(joint[i]);
  }
  return idx;
}

std::vector<int> StrategicGame::profile_actions(std::size_t profile) const {
  if (profile >= profiles_) throw InvalidArgument("profile out of range");
  std::vector<int> joint(actions_.size());
  for (std::size_t k = actions_.size(); k-- > 0;) {
    const auto m = static_cast<std::size_t>(actions_[k]);
    joint[k] = static_cast<int>(profile % m);
    profile /= m;
  }
  return joint;
}

namespace {

// Dense tableau simplex for: maximize v subject to
//   v - sum_r x_r M'_{rc} <= 0  for every column c,
//   sum_r x_r <= 1,  x, v >= 0,
// where M' = M - min(M) + 1 is positive, so the slack basis is feasible and
// the optimum has sum x = 1 with v the value of M'.
struct Tableau {
  Eigen::Index rows;  // constraints
  Eigen::Index cols;  // structural + slack variables
  Eigen::MatrixXd t;  // (rows + 1) x (cols + 1); last row objective, last col rhs
  std::vector<Eigen::Index> basis;

  void pivot(Eigen::Index r, Eigen::Index c) {
    t.row(r) /= t(r, c);
    for (Eigen::Index k = 0; k <= rows; ++k) {
      if (k == r) continue;
      const double factor = t(k, c);
      if (factor != 0.0) t.row(k) -= factor * t.row(r);
    }
    basis[static_cast<std::size_t>(r)] = c;
  }
};

}  // namespace

MatrixGameSolution matrix_game_value(const Eigen::MatrixXd& m) {
  const Eigen::Index nr = m.rows();
  const Eigen::Index nc = m.cols();
  if (nr == 0 || nc == 0) throw InvalidArgument("matrix game is empty");
  if (!m.allFinite()) throw InvalidArgument("matrix game entries not finite");

  const double lo = m.minCoeff();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double shift = 1.0 - lo;
  const Eigen::MatrixXd mp = m.array() + shift;

  // Variables: x_0..x_{nr-1}, v, then one slack per constraint.
  Tableau tab;
  tab.rows = nc + 1;
  tab.cols = nr + 1 + tab.rows;
  tab.t = Eigen::MatrixXd::Zero(tab.rows + 1, tab.cols + 1);
  const Eigen::Index v_col = nr;
  const Eigen::Index rhs = tab.cols;
  for (Eigen::Index c = 0; c < nc; ++c) {
    for (Eigen::Index r = 0; r < nr; ++r) tab.t(c, r) = -mp(r, c);
    tab.t(c, v_col) = 1.0;
  }
  for (Eigen::Index r = 0; r < nr; ++r) tab.t(nc, r) = 1.0;
  tab.t(nc, rhs) = 1.0;
  for (Eigen::Index k = 0; k < tab.rows; ++k) {
    tab.t(k, nr + 1 + k) = 1.0;
    tab.basis.push_back(nr + 1 + k);
  }
  // Objective row holds reduced costs of "minimize -v".
  tab.t(tab.rows, v_col) = -1.0;

  const double eps = 1e-12 * (scale + shift);
  const std::size_t max_iter = 50 * static_cast<std::size_t>(tab.rows + tab.cols);
  std::size_t iter = 0;
  while (true) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < tab.cols; ++j) {
      if (tab.t(tab.rows, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    // Minimum ratio; ties go to the lowest basic variable (Bland).
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < tab.rows; ++k) {
      if (tab.t(k, enter) > eps) best = std::min(best, tab.t(k, rhs) / tab.t(k, enter));
    }
    Eigen::Index leave = -1;
    for (Eigen::Index k = 0; k < tab.rows; ++k) {
      if (tab.t(k, enter) <= eps || tab.t(k, rhs) / tab.t(k, enter) > best + eps) {
        continue;
      }
      if (leave < 0 || tab.basis[k] < tab.basis[leave]) leave = k;
    }
    if (leave < 0) throw NumericalFailure("matrix game LP is unbounded");
    tab.pivot(leave, enter);
    if (++iter > max_iter) throw NumericalFailure("simplex did not converge");
  }

  MatrixGameSolution sol;
  sol.row_strategy.assign(static_cast<std::size_t>(nr), 0.0);
  for (Eigen::Index k = 0; k < tab.rows; ++k) {
    if (tab.basis[k] < nr) {
      sol.row_strategy[static_cast<std::size_t>(tab.basis[k])] =
          std::max(0.0, tab.t(k, rhs));
    }
  }
  sol.col_strategy.resize(static_cast<std::size_t>(nc));
  for (Eigen::Index c = 0; c < nc; ++c) {
    sol.col_strategy[static_cast<std::size_t>(c)] =
        std::max(0.0, tab.t(tab.rows, nr + 1 + c));
  }
  auto normalize = [](std::vector<double>& p) {
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    if (!(total > 0.0)) throw NumericalFailure("degenerate LP strategy");
    for (double& x : p) x /= total;
  };
  normalize(sol.row_strategy);
  normalize(sol.col_strategy);

  const Eigen::Map<const Eigen::VectorXd> x(sol.row_strategy.data(), nr);
  const Eigen::Map<const Eigen::VectorXd> y(sol.col_strategy.data(), nc);
  const double row_guarantee = (m.transpose() * x).minCoeff();
  const double col_guarantee = (m * y).maxCoeff();
  sol.value = tab.t(tab.rows, rhs) - shift;
  const double gap = 1e-8 * scale;
  if (col_guarantee - row_guarantee > gap || sol.value < row_guarantee - gap ||
      sol.value > col_guarantee + gap) {
    throw NumericalFailure("matrix game duality gap too large");
  }
  return sol;
}

namespace {

// Mixed-radix index of the actions of `members` within a joint profile,
// with the lowest member slowest.
struct SubProfile {
  std::vector<int> members;
  std::size_t count = 1;

  SubProfile(const StrategicGame& g, Coalition s) {
    for (int i = 0; i < g.players(); ++i) {
      if (contains(s, i)) {
        members.push_back(i);
        count *= static_cast<std::size_t>(g.actions()[i]);
      }
    }
  }
  std::size_t index(const StrategicGame& g, const std::vector<int>& joint) const {
    std::size_t idx = 0;
    for (int i : members) {
      idx = idx * static_cast<std::size_t>(g.actions()[i]) +
            static_cast<std::size_t>(joint[i]);
    }
    return idx;
  }
};

void require_coalition(const StrategicGame& g, Coalition s) {
  if (s > grand_coalition(g.players())) {
    throw InvalidArgument("coalition out of range");
  }
}

double best_total(const StrategicGame& g) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < g.profiles(); ++p) {
    double total = 0.0;
    for (int i = 0; i < g.players(); ++i) total += g.payoff(i, p);
    best = std::max(best, total);
  }
  return best;
}

}  // namespace

Eigen::MatrixXd threat_matrix(const StrategicGame& g, Coalition s) {
  require_coalition(g, s);
  const Coalition complement = grand_coalition(g.players()) & ~s;
  const SubProfile rows(g, s);
  const SubProfile cols(g, complement);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.count),
                    static_cast<Eigen::Index>(cols.count));
  for (std::size_t p = 0; p < g.profiles(); ++p) {
    const std::vector<int> joint = g.profile_actions(p);
    double entry = 0.0;
    for (int i = 0; i < g.players(); ++i) {
      entry += contains(s, i) ? g.payoff(i, p) : -g.payoff(i, p);
    }
    m(static_cast<Eigen::Index>(rows.index(g, joint)),
      static_cast<Eigen::Index>(cols.index(g, joint))) = entry;
  }
  return m;
}

double threat_power(const StrategicGame& g, Coalition s) {
  require_coalition(g, s);
  const Coalition grand = grand_coalition(g.players());
  if (s == grand) return best_total(g);
  if (s == 0) return -best_total(g);
  return matrix_game_value(threat_matrix(g, s)).value;
}

std::vector<double> threat_powers(const StrategicGame& g) {
  std::vector<double> out(std::size_t{1} << g.players());
  for (Coalition s = 0; s < out.size(); ++s) out[s] = threat_power(g, s);
  return out;
}

CoalitionGame induced_coalition_game(const StrategicGame& g) {
  const std::vector<double> dg = threat_powers(g);
  const double top = dg.back();
  std::vector<double> v(dg.size());
  for (std::size_t s = 0; s < dg.size(); ++s) v[s] = (dg[s] + top) / 2.0;
  v[0] = 0.0;
  return CoalitionGame(g.players(), std::move(v));
}

AllocationVector kn_value(const StrategicGame& g) {
  const int n = g.players();
  if (n > kMaxPermutationPlayers) {
    throw InvalidArgument("permutation enumeration is capped at N = 9");
  }
  const std::vector<double> dg = threat_powers(g);
  AllocationVector gamma(static_cast<std::size_t>(n), 0.0);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  double count = 0.0;
  do {
    Coalition s = 0;
    for (int i : order) {
      s = with_player(s, i);
      gamma[i] += dg[s];
    }
    count += 1.0;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& x : gamma) x /= count;
  return gamma;
}

AllocationTable extended_kn_value(const StrategicGame& g, double alpha) {
  return alpha_component_games(induced_coalition_game(g), alpha);
}

}  // namespace hodge
