#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "hodge/graph.hpp"
#include "hodge/poisson.hpp"

namespace hodge {

/// S^{ij}: S unchanged when it holds both or neither of i, j; otherwise the
/// memberships of i and j are exchanged.
Coalition swap_state(Coalition s, int i, int j);

/// v^{ij}(S) = v(S^{ij}).
CoalitionGame swap_game(const CoalitionGame& v, int i, int j);

/// v_{-i} on N-1 players; players above i shift down by one.
CoalitionGame restrict_game(const CoalitionGame& v, int i);

/// Inverse of the relabeling used by restrict_game: maps a coalition of the
/// restricted game back to a coalition of [N] that excludes `removed`.
Coalition expand_coalition(Coalition s, int removed);

/// A candidate allocation map v -> (Phi_i[v])_i.
using AllocationMap = std::function<AllocationTable(const CoalitionGame&)>;

struct AxiomWitness {
  int i = -1;  // zero-based; -1 when not applicable
  int j = -1;
  Coalition s = 0;
};

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  double violation = 0.0;  // worst absolute defect
  AxiomWitness witness;
  std::string note;
};

struct AxiomReport {
  double tolerance = 1e-9;
  std::vector<AxiomResult> results;

  bool passed() const;
  /// Throws InvalidArgument for an unknown axiom name.
  const AxiomResult& at(std::string_view axiom) const;
};

inline constexpr double kDefaultAxiomTolerance = 1e-9;

/// Checks grounding (Phi_i(empty) = 0), A1, A2, A3, A5 and A5' for `table`
/// as the allocation of `v`. A2 and A3 evaluate `map` on the swapped and
/// restricted games; the default map is component_games.
AxiomReport check_axioms(const CoalitionGame& v, const AllocationTable& table,
                         double tol = kDefaultAxiomTolerance,
                         const AllocationMap& map = {});

/// A4 for one pair: map(a v + b w) against a map(v) + b map(w).
AxiomResult check_linearity(const CoalitionGame& v, const CoalitionGame& w,
                            double a, double b,
                            double tol = kDefaultAxiomTolerance,
                            const AllocationMap& map = {});

}  // namespace hodge
