#include "grand/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <string>

namespace grand {

namespace {

int count_sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  int count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

void sorted_insert(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

void sorted_erase(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

/// Unbiased draw from [0, k) via mask rejection; avoids the
/// implementation-defined std::uniform_int_distribution.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t k) {
  if (k <= 1) return 0;
  const int bits = 64 - std::countl_zero(k - 1);
  const std::uint64_t mask = (bits == 64) ? ~0ull : (1ull << bits) - 1;
  for (;;) {
    const std::uint64_t r = rng() & mask;
    if (r < k) return r;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// BinaryGraph

BinaryGraph::BinaryGraph(int n) : n_(n) {
  if (n < 0) throw error(errc::contract, "vertex count must be non-negative");
  adj_.assign(static_cast<std::size_t>(n) * n, 0);
  nbrs_.assign(n, {});
}

BinaryGraph BinaryGraph::from_edges(int n, const std::vector<VertexPair>& edges) {
  BinaryGraph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

void BinaryGraph::check_vertex(int u) const {
  if (u < 0 || u >= n_) throw error(errc::contract, "vertex " + std::to_string(u) + " out of range");
}

bool BinaryGraph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return adj_[static_cast<std::size_t>(u) * n_ + v] != 0;
}

void BinaryGraph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw error(errc::contract, "self-loops are not allowed");
  if (adj_[static_cast<std::size_t>(u) * n_ + v]) return;
  adj_[static_cast<std::size_t>(u) * n_ + v] = 1;
  adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
  sorted_insert(nbrs_[u], v);
  sorted_insert(nbrs_[v], u);
  ++edges_;
}

void BinaryGraph::remove_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return;
  if (!adj_[static_cast<std::size_t>(u) * n_ + v]) return;
  adj_[static_cast<std::size_t>(u) * n_ + v] = 0;
  adj_[static_cast<std::size_t>(v) * n_ + u] = 0;
  sorted_erase(nbrs_[u], v);
  sorted_erase(nbrs_[v], u);
  --edges_;
}

const std::vector<int>& BinaryGraph::neighbors(int u) const {
  check_vertex(u);
  return nbrs_[u];
}

int BinaryGraph::degree(int u) const {
  check_vertex(u);
  return static_cast<int>(nbrs_[u].size());
}

std::vector<VertexPair> BinaryGraph::edges() const {
  std::vector<VertexPair> out;
  out.reserve(static_cast<std::size_t>(edges_));
  for (int u = 0; u < n_; ++u)
    for (int v : nbrs_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

// ---------------------------------------------------------------------------
// CommonNeighborsMatrix

CommonNeighborsMatrix::CommonNeighborsMatrix(int n) : n_(n) {
  if (n < 0) throw error(errc::contract, "vertex count must be non-negative");
  m_.assign(static_cast<std::size_t>(n) * n, 0);
}

void CommonNeighborsMatrix::check_vertex(int u) const {
  if (u < 0 || u >= n_) throw error(errc::contract, "vertex " + std::to_string(u) + " out of range");
}

std::int32_t CommonNeighborsMatrix::at(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return m_[static_cast<std::size_t>(u) * n_ + v];
}

void CommonNeighborsMatrix::set(int u, int v, std::int32_t value) {
  check_vertex(u);
  check_vertex(v);
  if (value < 0) throw error(errc::contract, "common-neighbor counts are non-negative");
  m_[static_cast<std::size_t>(u) * n_ + v] = value;
  m_[static_cast<std::size_t>(v) * n_ + u] = value;
}

std::int64_t CommonNeighborsMatrix::row_sum(int u) const {
  check_vertex(u);
  const std::int32_t* row = m_.data() + static_cast<std::size_t>(u) * n_;
  std::int64_t s = 0;
  for (int v = 0; v < n_; ++v) s += row[v];
  return s;
}

// ---------------------------------------------------------------------------
// TriStateAdjacency

TriStateAdjacency::TriStateAdjacency(int n) : n_(n) {
  if (n < 0) throw error(errc::contract, "vertex count must be non-negative");
  words_ = (n + 63) / 64;
  cells_.assign(static_cast<std::size_t>(n) * n, Cell::Unknown);
  for (int u = 0; u < n; ++u) cells_[static_cast<std::size_t>(u) * n + u] = Cell::Zero;
  ones_.assign(n, {});
  unknown_in_row_.assign(n, n > 0 ? n - 1 : 0);
  one_bits_.assign(static_cast<std::size_t>(n) * words_, 0);
  not_zero_bits_.assign(static_cast<std::size_t>(n) * words_, 0);
  for (int u = 0; u < n; ++u) {
    auto* row = not_zero_bits_.data() + static_cast<std::size_t>(u) * words_;
    for (int v = 0; v < n; ++v)
      if (v != u) row[v >> 6] |= 1ull << (v & 63);
  }
}

void TriStateAdjacency::check_vertex(int u) const {
  if (u < 0 || u >= n_) throw error(errc::contract, "vertex " + std::to_string(u) + " out of range");
}

Cell TriStateAdjacency::at(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return cells_[static_cast<std::size_t>(u) * n_ + v];
}

void TriStateAdjacency::write(int u, int v, Cell value) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) {
    if (value != Cell::Zero) throw error(errc::contract, "diagonal cells are fixed to Zero");
    return;
  }
  const Cell old = cells_[static_cast<std::size_t>(u) * n_ + v];
  if (old == value) return;
  cells_[static_cast<std::size_t>(u) * n_ + v] = value;
  cells_[static_cast<std::size_t>(v) * n_ + u] = value;

  if (old == Cell::One) {
    sorted_erase(ones_[u], v);
    sorted_erase(ones_[v], u);
  }
  if (value == Cell::One) {
    sorted_insert(ones_[u], v);
    sorted_insert(ones_[v], u);
  }
  if (old == Cell::Unknown) {
    --unknown_in_row_[u];
    --unknown_in_row_[v];
    ++determined_;
  }
  if (value == Cell::Unknown) {
    ++unknown_in_row_[u];
    ++unknown_in_row_[v];
    --determined_;
  }

  const std::uint64_t ubit = 1ull << (v & 63);
  const std::uint64_t vbit = 1ull << (u & 63);
  auto set_bit = [](std::uint64_t& w, std::uint64_t bit, bool on) {
    if (on)
      w |= bit;
    else
      w &= ~bit;
  };
  set_bit(one_bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)], ubit, value == Cell::One);
  set_bit(one_bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)], vbit, value == Cell::One);
  set_bit(not_zero_bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)], ubit, value != Cell::Zero);
  set_bit(not_zero_bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)], vbit, value != Cell::Zero);
}

const std::vector<int>& TriStateAdjacency::known_neighbors(int u) const {
  check_vertex(u);
  return ones_[u];
}

int TriStateAdjacency::unknown_in_row(int u) const {
  check_vertex(u);
  return unknown_in_row_[u];
}

long long TriStateAdjacency::unknown_pair_count() const {
  long long total = 0;
  for (int u = 0; u < n_; ++u) total += unknown_in_row_[u];
  return total / 2;
}

std::vector<VertexPair> TriStateAdjacency::unknown_cells() const {
  std::vector<VertexPair> out;
  for (int u = 0; u < n_; ++u) {
    if (unknown_in_row_[u] == 0) continue;
    const Cell* row = cells_.data() + static_cast<std::size_t>(u) * n_;
    for (int v = u + 1; v < n_; ++v)
      if (row[v] == Cell::Unknown) out.emplace_back(u, v);
  }
  return out;
}

int TriStateAdjacency::common_known(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  const std::uint64_t* a = one_bits_.data() + static_cast<std::size_t>(u) * words_;
  const std::uint64_t* b = one_bits_.data() + static_cast<std::size_t>(v) * words_;
  int count = 0;
  for (int w = 0; w < words_; ++w) count += std::popcount(a[w] & b[w]);
  return count;
}

int TriStateAdjacency::potential_common(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  const std::uint64_t* a = not_zero_bits_.data() + static_cast<std::size_t>(u) * words_;
  const std::uint64_t* b = not_zero_bits_.data() + static_cast<std::size_t>(v) * words_;
  int count = 0;
  for (int w = 0; w < words_; ++w) count += std::popcount(a[w] & b[w]);
  return count;
}

std::span<const std::uint64_t> TriStateAdjacency::one_row(int u) const {
  check_vertex(u);
  return {one_bits_.data() + static_cast<std::size_t>(u) * words_, static_cast<std::size_t>(words_)};
}

std::span<const std::uint64_t> TriStateAdjacency::not_zero_row(int u) const {
  check_vertex(u);
  return {not_zero_bits_.data() + static_cast<std::size_t>(u) * words_,
          static_cast<std::size_t>(words_)};
}

// ---------------------------------------------------------------------------
// Operations

CommonNeighborsMatrix square(const BinaryGraph& g) {
  const int n = g.size();
  CommonNeighborsMatrix m(n);
  for (int u = 0; u < n; ++u) {
    m.set(u, u, g.degree(u));
    for (int v = u + 1; v < n; ++v) {
      const int c = count_sorted_intersection(g.neighbors(u), g.neighbors(v));
      if (c != 0) m.set(u, v, c);
    }
  }
  return m;
}

TriStateAdjacency init_partial(int n, const KnowledgeSet& k) {
  TriStateAdjacency gstar(n);
  auto place = [&](const VertexPair& p, Cell value) {
    const auto [u, v] = p;
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw error(errc::contract, "knowledge pair out of range");
    if (u == v) throw error(errc::invalid_knowledge, "knowledge pairs may not be self-loops");
    const Cell cur = gstar.at(u, v);
    if (cur != Cell::Unknown && cur != value)
      throw error(errc::invalid_knowledge, "pair (" + std::to_string(u) + ", " +
                                               std::to_string(v) +
                                               ") appears in both known edges and non-edges");
    gstar.write(u, v, value);
  };
  for (const auto& p : k.known_edges) place(p, Cell::One);
  for (const auto& p : k.known_non_edges) place(p, Cell::Zero);
  return gstar;
}

KnowledgeSet sample_knowledge(const BinaryGraph& g, double rho, std::uint64_t seed) {
  if (rho < 0.0 || rho > 1.0) throw error(errc::contract, "rho must lie in [0, 1]");
  const int n = g.size();
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t take = static_cast<std::uint64_t>(rho * static_cast<double>(total));

  KnowledgeSet out;
  out.rho = rho;
  out.seed = seed;
  if (take == 0) return out;

  // row_start[u] = index of pair (u, u+1) in lexicographic pair order
  std::vector<std::uint64_t> row_start(n);
  std::uint64_t acc = 0;
  for (int u = 0; u < n; ++u) {
    row_start[u] = acc;
    acc += static_cast<std::uint64_t>(n - 1 - u);
  }

  std::vector<std::uint64_t> idx(total);
  std::iota(idx.begin(), idx.end(), 0ull);
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < take; ++i) {
    const std::uint64_t j = i + bounded(rng, total - i);
    std::swap(idx[i], idx[j]);
    const std::uint64_t p = idx[i];
    const auto it = std::upper_bound(row_start.begin(), row_start.end(), p);
    const int u = static_cast<int>(it - row_start.begin()) - 1;
    const int v = u + 1 + static_cast<int>(p - row_start[u]);
    if (g.has_edge(u, v))
      out.known_edges.emplace_back(u, v);
    else
      out.known_non_edges.emplace_back(u, v);
  }
  std::sort(out.known_edges.begin(), out.known_edges.end());
  std::sort(out.known_non_edges.begin(), out.known_non_edges.end());
  return out;
}

std::vector<BinaryGraph> cosquare_oracle(const CommonNeighborsMatrix& g2, int max_n) {
  if (max_n < 0 || max_n > 8)
    throw error(errc::contract, "cosquare_oracle supports at most 8 vertices");
  const int n = g2.size();
  if (n > max_n)
    throw error(errc::capacity, "matrix has " + std::to_string(n) +
                                    " vertices, oracle capped at " + std::to_string(max_n));

  std::vector<VertexPair> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  const int p = static_cast<int>(pairs.size());

  std::vector<BinaryGraph> found;
  for (std::uint64_t mask = 0; mask < (1ull << p); ++mask) {
    BinaryGraph h(n);
    for (int i = 0; i < p; ++i)
      if (mask >> i & 1) h.add_edge(pairs[i].first, pairs[i].second);
    if (square(h) == g2) found.push_back(std::move(h));
  }
  std::sort(found.begin(), found.end(),
            [](const BinaryGraph& a, const BinaryGraph& b) { return a.edges() < b.edges(); });
  return found;
}

BinaryGraph finalize(const TriStateAdjacency& gstar, Cell fill) {
  if (fill == Cell::Unknown) throw error(errc::contract, "fill value must be Zero or One");
  const int n = gstar.size();
  BinaryGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const Cell c = gstar.at(u, v);
      if (c == Cell::One || (c == Cell::Unknown && fill == Cell::One)) g.add_edge(u, v);
    }
  return g;
}

}  // namespace grand
