#include "grand/cosquare.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>

namespace grand {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// Incremental evaluator for one component: tracks |Γ(c) ∩ Γ(w)| for every
/// component vertex c against every w while assignment edges toggle, plus the
/// number of tracked pairs disagreeing with g2. Background Unknown cells
/// count as absent edges.
class CompletionSearch {
 public:
  CompletionSearch(const TriStateAdjacency& base, const CommonNeighborsMatrix& g2,
                   const AmbiguousComponent& comp)
      : n_(base.size()), g2_(g2), cells_(comp.cells), comp_vertices_(comp.vertices) {
    vindex_.assign(n_, -1);
    for (int i = 0; i < static_cast<int>(comp_vertices_.size()); ++i)
      vindex_[comp_vertices_[i]] = i;

    nbrs_.resize(comp_vertices_.size());
    for (std::size_t i = 0; i < comp_vertices_.size(); ++i)
      nbrs_[i] = base.known_neighbors(comp_vertices_[i]);

    counts_.assign(comp_vertices_.size(), std::vector<std::int32_t>(n_, 0));
    for (std::size_t i = 0; i < comp_vertices_.size(); ++i) {
      const int c = comp_vertices_[i];
      for (int w = 0; w < n_; ++w)
        counts_[i][w] = (w == c) ? base.known_degree(c) : base.common_known(c, w);
    }

    mismatch_flag_.assign(comp_vertices_.size(), std::vector<char>(n_, 0));
    for (std::size_t i = 0; i < comp_vertices_.size(); ++i) {
      const int c = comp_vertices_[i];
      for (int w = 0; w < n_; ++w) {
        if (!owns(c, w)) continue;
        if (counts_[i][w] != g2_.at(c, w)) {
          mismatch_flag_[i][w] = 1;
          ++mismatches_;
        }
      }
    }
  }

  long long mismatches() const { return mismatches_; }

  void toggle(int cell_index, bool add) {
    const auto [a, b] = cells_[cell_index];
    if (add) {
      bump_all(a, b, +1);
      insert(a, b);
      insert(b, a);
    } else {
      erase(a, b);
      erase(b, a);
      bump_all(a, b, -1);
    }
  }

 private:
  bool owns(int c, int w) const {
    // Each tracked unordered pair is owned by exactly one (row, column) slot.
    if (w == c) return true;
    const int wi = vindex_[w];
    return wi < 0 || w > c;
  }

  void insert(int c, int w) {
    auto& v = nbrs_[vindex_[c]];
    v.insert(std::lower_bound(v.begin(), v.end(), w), w);
  }

  void erase(int c, int w) {
    auto& v = nbrs_[vindex_[c]];
    v.erase(std::lower_bound(v.begin(), v.end(), w));
  }

  // Count changes induced by toggling edge (a, b); both endpoints are
  // component vertices, so every touched pair is tracked.
  void bump_all(int a, int b, int delta) {
    for (int w : nbrs_[vindex_[a]]) bump(b, w, delta);
    for (int w : nbrs_[vindex_[b]]) bump(a, w, delta);
    bump(a, a, delta);
    bump(b, b, delta);
  }

  void bump(int x, int y, int delta) {
    const int xi = vindex_[x];
    const std::int32_t value = (counts_[xi][y] += delta);
    const int yi = (y == x) ? -1 : vindex_[y];
    if (yi >= 0) counts_[yi][x] = value;

    int oi = xi, ow = y;
    if (!owns(x, y)) {
      oi = yi;
      ow = x;
    }
    const bool now = value != g2_.at(x, y);
    char& flag = mismatch_flag_[oi][ow];
    if (static_cast<bool>(flag) != now) {
      flag = now ? 1 : 0;
      mismatches_ += now ? 1 : -1;
    }
  }

  int n_;
  const CommonNeighborsMatrix& g2_;
  const std::vector<VertexPair>& cells_;
  const std::vector<int>& comp_vertices_;
  std::vector<int> vindex_;
  std::vector<std::vector<int>> nbrs_;
  std::vector<std::vector<std::int32_t>> counts_;
  std::vector<std::vector<char>> mismatch_flag_;
  long long mismatches_ = 0;
};

/// Assignment bits use cell 0 as the most significant digit so "smaller"
/// means lexicographically smaller over the cell list.
std::uint64_t lex_value(std::uint64_t bits, int k) {
  std::uint64_t v = 0;
  for (int i = 0; i < k; ++i)
    if (bits >> i & 1) v |= 1ull << (k - 1 - i);
  return v;
}

}  // namespace

std::vector<AmbiguousComponent> find_ambiguous_components(const TriStateAdjacency& gstar) {
  const std::vector<VertexPair> cells = gstar.unknown_cells();
  const int m = static_cast<int>(cells.size());
  Dsu dsu(m);
  std::vector<int> first_cell_of_vertex(gstar.size(), -1);
  for (int i = 0; i < m; ++i) {
    for (int x : {cells[i].first, cells[i].second}) {
      if (first_cell_of_vertex[x] < 0)
        first_cell_of_vertex[x] = i;
      else
        dsu.unite(i, first_cell_of_vertex[x]);
    }
  }

  std::vector<int> root_to_comp(m, -1);
  std::vector<AmbiguousComponent> comps;
  for (int i = 0; i < m; ++i) {
    const int r = dsu.find(i);
    if (root_to_comp[r] < 0) {
      root_to_comp[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[root_to_comp[r]].cells.push_back(cells[i]);
  }
  for (auto& comp : comps) {
    for (const auto& [u, v] : comp.cells) {
      comp.vertices.push_back(u);
      comp.vertices.push_back(v);
    }
    std::sort(comp.vertices.begin(), comp.vertices.end());
    comp.vertices.erase(std::unique(comp.vertices.begin(), comp.vertices.end()),
                        comp.vertices.end());
  }
  std::stable_sort(comps.begin(), comps.end(),
                   [](const AmbiguousComponent& a, const AmbiguousComponent& b) {
                     if (a.cells.size() != b.cells.size()) return a.cells.size() < b.cells.size();
                     return a.cells < b.cells;
                   });
  return comps;
}

TriStateAdjacency instantiate_cosquare(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2,
                                       AmbiguousComponent& comp, int budget) {
  if (gstar.size() != g2.size())
    throw error(errc::contract, "G* and g2 must have the same vertex count");
  if (budget < 0 || budget > 62) throw error(errc::contract, "budget must lie in [0, 62]");
  for (const auto& [u, v] : comp.cells)
    if (gstar.at(u, v) != Cell::Unknown)
      throw error(errc::contract, "component cell (" + std::to_string(u) + ", " +
                                      std::to_string(v) + ") is not Unknown");

  const int k = static_cast<int>(comp.cells.size());
  if (k > budget)
    throw error(errc::capacity, "component has " + std::to_string(k) +
                                    " unknown cells, budget is " + std::to_string(budget));

  CompletionSearch search(gstar, g2, comp);
  long long solutions = 0;
  std::uint64_t best = 0;
  bool have_best = false;
  std::uint64_t current = 0;

  auto consider = [&]() {
    if (search.mismatches() != 0) return;
    ++solutions;
    const std::uint64_t v = lex_value(current, k);
    if (!have_best || v < best) {
      best = v;
      have_best = true;
    }
  };

  consider();  // the all-absent assignment
  for (std::uint64_t m = 1; m < (1ull << k); ++m) {
    const int bit = std::countr_zero(m);
    const bool add = !(current >> bit & 1);
    search.toggle(bit, add);
    current ^= 1ull << bit;
    consider();
  }

  comp.solutions_found = solutions;
  if (!have_best)
    throw error(errc::inconsistent, "no completion of the ambiguous component matches g2");

  for (int i = 0; i < k; ++i) {
    const bool present = best >> (k - 1 - i) & 1;
    gstar.write(comp.cells[i].first, comp.cells[i].second, present ? Cell::One : Cell::Zero);
  }
  return gstar;
}

bool bipartite_or_disconnected_check(const CommonNeighborsMatrix& g2) {
  const int n = g2.size();
  if (n <= 1) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      if (v == u || seen[v] || g2.at(u, v) <= 0) continue;
      seen[v] = 1;
      ++visited;
      stack.push_back(v);
    }
  }
  return visited < n;
}

}  // namespace grand
