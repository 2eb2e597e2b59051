#pragma once

#include <array>
#include <string>
#include <vector>

#include "grand/graph.hpp"

namespace grand {

enum class Attack : int {
  degree_combination = 0,
  degree_matching,
  neighbor_matching,
  degree_completion,
  neighbor_completion,
  triangle,
  biclique,
};

inline constexpr int kAttackCount = 7;

const char* attack_name(Attack a);

/// The cycle order used by the fixpoint driver.
inline constexpr std::array<Attack, kAttackCount> kDefaultAttackOrder = {
    Attack::degree_combination, Attack::degree_matching,    Attack::neighbor_matching,
    Attack::degree_completion,  Attack::neighbor_completion, Attack::triangle,
    Attack::biclique,
};

/// A contradiction found while applying an attack. Contradictions prove
/// the inputs are mutually inconsistent; they are never written into G*.
struct Conflict {
  enum class Kind {
    cell,   // rule wants to write `attempted` over determined `existing` at (u, v)
    count,  // known neighbors/common-neighbors at (u, v) already exceed g2 (u == v: degree)
    row,    // no candidate neighborhood of u can satisfy g2 (u == v)
  };
  Kind kind = Kind::cell;
  int u = 0, v = 0;
  Cell existing = Cell::Unknown;
  Cell attempted = Cell::Unknown;
  Attack source = Attack::degree_combination;

  friend bool operator==(const Conflict&, const Conflict&) = default;
};

std::string describe(const Conflict& c);

struct AttackOutcome {
  TriStateAdjacency updated;
  long long changes = 0;  // cells moved from Unknown to Zero/One
  std::vector<Conflict> conflicts;
};

AttackOutcome degree_combination_attack(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2,
                                        int max_degree = 2);
AttackOutcome degree_matching_attack(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2);
AttackOutcome neighbor_matching_attack(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2);
AttackOutcome degree_completion_attack(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2);
AttackOutcome neighbor_completion_attack(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2);
AttackOutcome triangle_attack(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2);
AttackOutcome biclique_attack(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2);

struct FixpointOptions {
  int max_combination_degree = 2;
  std::array<Attack, kAttackCount> order = kDefaultAttackOrder;
  /// When false (default) any conflict aborts with an inconsistent-inputs
  /// error naming the offending cell. When true conflicts are recorded in
  /// the stats and the offending writes are skipped.
  bool tolerate_conflicts = false;
};

struct FixpointStats {
  std::array<long long, kAttackCount> changes_by_attack{};  // indexed by Attack value
  long long total_changes = 0;
  int cycles = 0;
  std::vector<Conflict> conflicts;  // deduplicated
};

/// Cycles the seven attacks over an existing G* until a full cycle makes
/// zero changes.
TriStateAdjacency run_attacks_to_fixpoint(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2,
                                          const FixpointOptions& options = {},
                                          FixpointStats* stats = nullptr);

/// init_partial followed by the attack cycle.
TriStateAdjacency topological_fixpoint(const KnowledgeSet& knowledge,
                                       const CommonNeighborsMatrix& g2,
                                       const FixpointOptions& options = {},
                                       FixpointStats* stats = nullptr);

}  // namespace grand
