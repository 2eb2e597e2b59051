#pragma once

#include <vector>

#include "grand/graph.hpp"

namespace grand {

/// A connected group of Unknown cells (cells are linked when they share a
/// vertex). Independent completions have disjoint vertex support once the
/// rest of the matrix is fixed.
struct AmbiguousComponent {
  std::vector<VertexPair> cells;   // lexicographic
  std::vector<int> vertices;      // sorted, unique
  long long solutions_found = 0;  // filled by instantiate_cosquare
};

/// Partitions the Unknown cells of gstar into components, largest last.
std::vector<AmbiguousComponent> find_ambiguous_components(const TriStateAdjacency& gstar);

/// Exhaustively searches the 0/1 assignments of comp's cells and applies the
/// lexicographically smallest one whose induced common-neighbor counts match
/// g2 on every pair incident to comp's vertices (Unknown cells outside the
/// component count as absent edges). comp.solutions_found receives the number
/// of valid assignments.
///
/// Throws capacity when |cells| > budget and inconsistent when no assignment
/// fits.
TriStateAdjacency instantiate_cosquare(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2,
                                       AmbiguousComponent& comp, int budget = 20);

/// True when the graph induced by the nonzero off-diagonal entries of g2 is
/// disconnected; the target is then disconnected or bipartite. Diagnostic
/// only, no reconstruction decision is taken.
bool bipartite_or_disconnected_check(const CommonNeighborsMatrix& g2);

}  // namespace grand
