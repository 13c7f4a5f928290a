#include "hodge/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hodge/error.hpp"

namespace hodge {

namespace {

void require_player(const CoalitionGame& v, int i) {
  if (i < 0 || i >= v.players()) throw InvalidArgument("player out of range");
}

void require_table(const CoalitionGame& v, const AllocationTable& t) {
  if (t.size() != static_cast<std::size_t>(v.players())) {
    throw InvalidArgument("allocation table has the wrong number of players");
  }
  for (const VertexFunction& phi : t) {
    if (phi.size() != v.size()) {
      throw InvalidArgument("allocation table has the wrong number of states");
    }
  }
}

AllocationTable allocate(const AllocationMap& map, const CoalitionGame& v) {
  return map ? map(v) : component_games(v);
}

// Tracks the worst defect seen for one axiom.
class Tracker {
 public:
  explicit Tracker(std::string name) { result_.axiom = std::move(name); }

  void record(double defect, AxiomWitness w) {
    if (std::isnan(defect)) defect = std::numeric_limits<double>::infinity();
    if (defect > result_.violation) {
      result_.violation = defect;
      result_.witness = w;
    }
  }
  void note(std::string text) { result_.note = std::move(text); }
  double violation() const { return result_.violation; }

  AxiomResult finish(double tol) {
    result_.pass = result_.violation <= tol;
    return std::move(result_);
  }

 private:
  AxiomResult result_;
};

// Drops bit `removed` and shifts the higher bits down.
Coalition compress(Coalition s, int removed) {
  const Coalition low = s & ((Coalition{1} << removed) - 1);
  return low | ((s >> (removed + 1)) << removed);
}

std::string relabel_note(int n, int removed) {
  std::string out = "restricted players";
  for (int k = 0, r = 0; k < n; ++k) {
    if (k == removed) continue;
    out += ' ' + std::to_string(k + 1) + "->" + std::to_string(++r);
  }
  return out;
}

}  // namespace

Coalition swap_state(Coalition s, int i, int j) {
  if (i < 0 || j < 0 || i >= kMaxPlayers || j >= kMaxPlayers) {
    throw InvalidArgument("player out of range");
  }
  if (contains(s, i) == contains(s, j)) return s;
  return s ^ ((Coalition{1} << i) | (Coalition{1} << j));
}

CoalitionGame swap_game(const CoalitionGame& v, int i, int j) {
  require_player(v, i);
  require_player(v, j);
  return CoalitionGame::from_function(
      v.players(), [&](Coalition s) { return v(swap_state(s, i, j)); });
}

Coalition expand_coalition(Coalition s, int removed) {
  const Coalition low = s & ((Coalition{1} << removed) - 1);
  return low | ((s & ~low) << 1);
}

CoalitionGame restrict_game(const CoalitionGame& v, int i) {
  if (v.players() < 2) throw InvalidArgument("cannot restrict a 1-player game");
  require_player(v, i);
  return CoalitionGame::from_function(
      v.players() - 1, [&](Coalition s) { return v(expand_coalition(s, i)); });
}

bool AxiomReport::passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const AxiomResult& r) { return r.pass; });
}

const AxiomResult& AxiomReport::at(std::string_view axiom) const {
  for (const AxiomResult& r : results) {
    if (r.axiom == axiom) return r;
  }
  throw InvalidArgument("no result for axiom " + std::string(axiom));
}

AxiomReport check_axioms(const CoalitionGame& v, const AllocationTable& table,
                         double tol, const AllocationMap& map) {
  require_table(v, table);
  const int n = v.players();
  const Coalition grand = v.grand();
  AxiomReport report;
  report.tolerance = tol;

  {
    Tracker t("grounding");
    for (int i = 0; i < n; ++i) t.record(std::abs(table[i][0]), {i, -1, 0});
    report.results.push_back(t.finish(tol));
  }

  {
    Tracker t("A1");
    for (Coalition s = 0; s <= grand; ++s) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += table[i][s];
      t.record(std::abs(v(s) - sum), {-1, -1, s});
    }
    report.results.push_back(t.finish(tol));
  }

  {
    Tracker t("A2");
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const AllocationTable swapped = allocate(map, swap_game(v, i, j));
        require_table(v, swapped);
        for (Coalition s = 0; s <= grand; ++s) {
          const Coalition sw = swap_state(s, i, j);
          t.record(std::abs(swapped[i][sw] - table[j][s]), {i, j, s});
          t.record(std::abs(swapped[j][sw] - table[i][s]), {j, i, s});
        }
      }
    }
    report.results.push_back(t.finish(tol));
  }

  {
    Tracker t("A3");
    int nulls = 0;
    for (int i = 0; i < n; ++i) {
      bool null_player = true;
      for (Coalition s = 0; s <= grand && null_player; ++s) {
        if (!contains(s, i)) null_player = v(with_player(s, i)) == v(s);
      }
      if (!null_player) continue;
      ++nulls;
      for (Coalition s = 0; s <= grand; ++s) {
        t.record(std::abs(table[i][s]), {i, -1, s});
      }
      AllocationTable restricted;
      if (n >= 2) {
        const CoalitionGame r = restrict_game(v, i);
        restricted = allocate(map, r);
        require_table(r, restricted);
        t.note(relabel_note(n, i));
      }
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const int jr = j < i ? j : j - 1;
        for (Coalition s = 0; s <= grand; ++s) {
          if (contains(s, i)) continue;
          t.record(std::abs(table[j][with_player(s, i)] - table[j][s]),
                   {i, j, s});
          if (!restricted.empty()) {
            t.record(std::abs(table[j][s] - restricted[jr][compress(s, i)]),
                     {i, j, s});
          }
        }
      }
    }
    if (nulls == 0) t.note("no null player");
    report.results.push_back(t.finish(tol));
  }

  {
    Tracker t("A5");
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        for (Coalition s = 0; s <= grand; ++s) {
          if (contains(s, i) || contains(s, j)) continue;
          const Coalition si = with_player(s, i);
          const Coalition sj = with_player(s, j);
          const Coalition sij = with_player(si, j);
          const double lhs = table[i][sij] - table[i][si];
          const double rhs = -(table[i][sj] - table[i][s]);
          t.record(std::abs(lhs - rhs), {i, j, s});
        }
      }
    }
    report.results.push_back(t.finish(tol));
  }

  {
    // Phi_i(S u i) + Phi_i(S) must not depend on S.
    Tracker t("A5'");
    for (int i = 0; i < n; ++i) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      Coalition s_lo = 0;
      Coalition s_hi = 0;
      for (Coalition s = 0; s <= grand; ++s) {
        if (contains(s, i)) continue;
        const double c = table[i][with_player(s, i)] + table[i][s];
        if (c < lo) {
          lo = c;
          s_lo = s;
        }
        if (c > hi) {
          hi = c;
          s_hi = s;
        }
      }
      if (hi - lo > t.violation()) {
        t.note("against T = " + coalition_label(s_lo));
      }
      t.record(hi - lo, {i, -1, s_hi});
    }
    report.results.push_back(t.finish(tol));
  }

  return report;
}

AxiomResult check_linearity(const CoalitionGame& v, const CoalitionGame& w,
                            double a, double b, double tol,
                            const AllocationMap& map) {
  if (v.players() != w.players()) {
    throw InvalidArgument("linearity check needs games on the same players");
  }
  const CoalitionGame mix = CoalitionGame::from_function(
      v.players(), [&](Coalition s) { return a * v(s) + b * w(s); });
  const AllocationTable lhs = allocate(map, mix);
  const AllocationTable tv = allocate(map, v);
  const AllocationTable tw = allocate(map, w);
  require_table(v, lhs);
  require_table(v, tv);
  require_table(v, tw);
  Tracker t("A4");
  for (int i = 0; i < v.players(); ++i) {
    for (Coalition s = 0; s <= v.grand(); ++s) {
      t.record(std::abs(lhs[i][s] - (a * tv[i][s] + b * tw[i][s])), {i, -1, s});
    }
  }
  return t.finish(tol);
}

}  // namespace hodge
