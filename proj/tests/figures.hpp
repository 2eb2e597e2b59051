#pragma once

// Hand-built fixtures for the captioned single-rule inferences: each bundles
// a true graph, the partial state the rule sees, and the cells it must
// determine.

#include <vector>

#include "grand/graph.hpp"
#include "testing.hpp"

namespace grand::testing {

struct RuleFixture {
  BinaryGraph graph;
  TriStateAdjacency start;
  std::vector<std::pair<VertexPair, Cell>> expected;
};

/// Star: the center's row sum equals the degree sum of the four leaves, and
/// no other size-4 candidate set matches, so all four spoke edges exist.
inline RuleFixture star_row_sum_fixture() {
  RuleFixture f;
  f.graph = star_graph(5, 2);
  f.start = TriStateAdjacency(5);
  for (int leaf : {0, 1, 3, 4}) f.expected.push_back({ordered(2, leaf), Cell::One});
  return f;
}

/// A degree-1 vertex whose single neighbor is already known: every other
/// cell in its row is impossible.
inline RuleFixture leaf_degree_satisfied_fixture() {
  RuleFixture f;
  f.graph = make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}});
  f.start = TriStateAdjacency(5);
  f.start.write(0, 4, Cell::One);
  for (int v : {1, 2, 3}) f.expected.push_back({ordered(4, v), Cell::Zero});
  return f;
}

/// A vertex with one known neighbor, two unknown cells and target degree 3:
/// both unknown cells must be edges.
inline RuleFixture missing_degree_completion_fixture() {
  RuleFixture f;
  f.graph = make(5, {{0, 2}, {0, 3}, {0, 4}, {2, 3}});
  f.start = TriStateAdjacency(5);
  f.start.write(0, 2, Cell::One);
  f.start.write(0, 1, Cell::Zero);
  f.expected.push_back({ordered(0, 3), Cell::One});
  f.expected.push_back({ordered(0, 4), Cell::One});
  return f;
}

/// A known edge whose endpoints share one common neighbor, with a single
/// candidate vertex: that vertex closes the triangle.
inline RuleFixture unique_triangle_fixture() {
  RuleFixture f;
  f.graph = make(5, {{0, 1}, {0, 3}, {1, 3}});
  f.start = TriStateAdjacency(5);
  f.start.write(0, 1, Cell::One);
  f.expected.push_back({ordered(0, 3), Cell::One});
  f.expected.push_back({ordered(1, 3), Cell::One});
  return f;
}

/// A vertex with a fully known neighborhood {1, 2}; vertex 0 shares two
/// common neighbors with it, so vertex 0 is adjacent to 1 and 2 as well.
inline RuleFixture biclique_extension_fixture() {
  RuleFixture f;
  f.graph = make(5, {{4, 1}, {4, 2}, {0, 1}, {0, 2}});
  f.start = TriStateAdjacency(5);
  f.start.write(4, 1, Cell::One);
  f.start.write(4, 2, Cell::One);
  f.expected.push_back({ordered(0, 1), Cell::One});
  f.expected.push_back({ordered(0, 2), Cell::One});
  return f;
}

}  // namespace grand::testing
