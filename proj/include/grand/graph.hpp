#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "grand/error.hpp"

namespace grand {

/// Unordered vertex pair, stored with first < second.
using VertexPair = std::pair<int, int>;

enum class Cell : std::uint8_t { Zero = 0, One = 1, Unknown = 2 };

inline VertexPair ordered(int u, int v) { return u < v ? VertexPair{u, v} : VertexPair{v, u}; }

/// Undirected simple graph: symmetric 0/1 adjacency, zero diagonal.
/// Stored both as a dense byte matrix and as sorted neighbor lists so
/// set intersections and row scans are both cheap.
class BinaryGraph {
 public:
  BinaryGraph() = default;
  explicit BinaryGraph(int n);
  static BinaryGraph from_edges(int n, const std::vector<VertexPair>& edges);

  int size() const { return n_; }
  bool has_edge(int u, int v) const;
  void add_edge(int u, int v);     // no-op if already present
  void remove_edge(int u, int v);  // no-op if absent
  const std::vector<int>& neighbors(int u) const;
  int degree(int u) const;
  long long edge_count() const { return edges_; }
  std::vector<VertexPair> edges() const;  // lexicographic (u, v), u < v

  bool operator==(const BinaryGraph& other) const { return n_ == other.n_ && adj_ == other.adj_; }

 private:
  void check_vertex(int u) const;
  int n_ = 0;
  long long edges_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<int>> nbrs_;
};

/// Common-neighbors matrix G^2: symmetric, non-negative integers,
/// diagonal = vertex degrees when produced from a graph.
class CommonNeighborsMatrix {
 public:
  CommonNeighborsMatrix() = default;
  explicit CommonNeighborsMatrix(int n);

  int size() const { return n_; }
  std::int32_t at(int u, int v) const;
  void set(int u, int v, std::int32_t value);  // symmetric write
  std::int64_t row_sum(int u) const;           // includes the diagonal entry

  bool operator==(const CommonNeighborsMatrix& other) const {
    return n_ == other.n_ && m_ == other.m_;
  }

 private:
  void check_vertex(int u) const;
  int n_ = 0;
  std::vector<std::int32_t> m_;
};

/// The evolving reconstruction G*: symmetric tri-state matrix with a
/// forced-zero diagonal. Keeps sorted known-neighbor lists plus per-row
/// bitsets (cells == One, cells != Zero) for fast counting.
class TriStateAdjacency {
 public:
  TriStateAdjacency() = default;
  explicit TriStateAdjacency(int n);  // diagonal Zero, everything else Unknown

  int size() const { return n_; }
  Cell at(int u, int v) const;
  /// Unconditional symmetric overwrite; the diagonal only accepts Zero.
  void write(int u, int v, Cell value);

  const std::vector<int>& known_neighbors(int u) const;  // One cells, sorted
  int known_degree(int u) const { return static_cast<int>(known_neighbors(u).size()); }
  int unknown_in_row(int u) const;

  long long determined_pairs() const { return determined_; }  // off-diagonal unordered
  long long unknown_pair_count() const;
  std::vector<VertexPair> unknown_cells() const;  // lexicographic
  bool fully_determined() const { return unknown_pair_count() == 0; }

  /// |Γ*(u) ∩ Γ*(v)| over determined One cells.
  int common_known(int u, int v) const;
  /// Count of w with both (u,w) and (v,w) not Zero.
  int potential_common(int u, int v) const;

  int words() const { return words_; }
  std::span<const std::uint64_t> one_row(int u) const;
  std::span<const std::uint64_t> not_zero_row(int u) const;

  bool operator==(const TriStateAdjacency& other) const {
    return n_ == other.n_ && cells_ == other.cells_;
  }

 private:
  void check_vertex(int u) const;
  int n_ = 0;
  int words_ = 0;
  long long determined_ = 0;
  std::vector<Cell> cells_;
  std::vector<std::vector<int>> ones_;
  std::vector<int> unknown_in_row_;
  std::vector<std::uint64_t> one_bits_;       // n * words_
  std::vector<std::uint64_t> not_zero_bits_;  // n * words_
};

/// Prior knowledge: known edges (E1) and known non-edges (E0).
struct KnowledgeSet {
  std::vector<VertexPair> known_edges;
  std::vector<VertexPair> known_non_edges;
  double rho = 0.0;
  std::uint64_t seed = 0;
};

CommonNeighborsMatrix square(const BinaryGraph& g);

/// G* from prior knowledge: One on E1, Zero on E0 and the diagonal,
/// Unknown elsewhere. Throws invalid_knowledge on E0/E1 overlap or
/// self-loop pairs.
TriStateAdjacency init_partial(int n, const KnowledgeSet& k);

/// Uniform sample of floor(rho * n(n-1)/2) unordered pairs, each placed
/// into E1 if it is an edge of g, else E0. Deterministic for a fixed seed.
KnowledgeSet sample_knowledge(const BinaryGraph& g, double rho, std::uint64_t seed);

/// Exhaustive enumeration of every graph H with square(H) == g2, in
/// lexicographic edge-set order. Test oracle; cost is 2^(n(n-1)/2).
std::vector<BinaryGraph> cosquare_oracle(const CommonNeighborsMatrix& g2, int max_n = 8);

BinaryGraph finalize(const TriStateAdjacency& gstar, Cell fill = Cell::Zero);

}  // namespace grand
