#include "grand/topo_attacks.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <tuple>

namespace grand {

const char* attack_name(Attack a) {
  switch (a) {
    case Attack::degree_combination: return "degree_combination";
    case Attack::degree_matching: return "degree_matching";
    case Attack::neighbor_matching: return "neighbor_matching";
    case Attack::degree_completion: return "degree_completion";
    case Attack::neighbor_completion: return "neighbor_completion";
    case Attack::triangle: return "triangle";
    case Attack::biclique: return "biclique";
  }
  return "?";
}

namespace {

const char* cell_name(Cell c) {
  switch (c) {
    case Cell::Zero: return "0";
    case Cell::One: return "1";
    case Cell::Unknown: return "?";
  }
  return "?";
}

}  // namespace

std::string describe(const Conflict& c) {
  const std::string cell = "(" + std::to_string(c.u) + ", " + std::to_string(c.v) + ")";
  switch (c.kind) {
    case Conflict::Kind::cell:
      return std::string(attack_name(c.source)) + " would set cell " + cell + " to " +
             cell_name(c.attempted) + " but it is already " + cell_name(c.existing);
    case Conflict::Kind::count:
      return std::string(attack_name(c.source)) + ": known " +
             (c.u == c.v ? "degree" : "common neighbors") + " at " + cell + " already exceed g2";
    case Conflict::Kind::row:
      return std::string(attack_name(c.source)) + ": no candidate neighborhood of vertex " +
             std::to_string(c.u) + " can satisfy g2";
  }
  return "conflict";
}

namespace {

/// Static per-matrix data shared by all passes: row sums and, for the
/// triangle attack, bitsets of the off-diagonal nonzero entries.
struct G2Cache {
  std::vector<std::int64_t> row_sums;
  int words = 0;
  std::vector<std::uint64_t> support;  // n * words

  explicit G2Cache(const CommonNeighborsMatrix& g2) {
    const int n = g2.size();
    words = (n + 63) / 64;
    row_sums.resize(n);
    support.assign(static_cast<std::size_t>(n) * words, 0);
    for (int u = 0; u < n; ++u) {
      std::int64_t s = 0;
      auto* row = support.data() + static_cast<std::size_t>(u) * words;
      for (int v = 0; v < n; ++v) {
        const std::int32_t x = g2.at(u, v);
        s += x;
        if (x > 0 && v != u) row[v >> 6] |= 1ull << (v & 63);
      }
      row_sums[u] = s;
    }
  }

  std::span<const std::uint64_t> row(int u) const {
    return {support.data() + static_cast<std::size_t>(u) * words, static_cast<std::size_t>(words)};
  }
};

struct Ctx {
  TriStateAdjacency& gstar;
  const CommonNeighborsMatrix& g2;
  const G2Cache& cache;
  std::vector<Conflict>& conflicts;
  long long changes = 0;
  Attack current = Attack::degree_combination;
  std::vector<int> scratch{};
  std::vector<char> mark{};

  void put(int u, int v, Cell value) {
    if (u == v) {
      if (value != Cell::Zero)
        conflicts.push_back({Conflict::Kind::cell, u, v, Cell::Zero, value, current});
      return;
    }
    const Cell cur = gstar.at(u, v);
    if (cur == value) return;
    if (cur == Cell::Unknown) {
      gstar.write(u, v, value);
      ++changes;
      return;
    }
    conflicts.push_back({Conflict::Kind::cell, u, v, cur, value, current});
  }

  void count_conflict(int u, int v) {
    conflicts.push_back({Conflict::Kind::count, u, v, Cell::Unknown, Cell::Unknown, current});
  }

  void row_conflict(int u) {
    conflicts.push_back({Conflict::Kind::row, u, u, Cell::Unknown, Cell::Unknown, current});
  }
};

template <class WordAt>
void collect_bits(int words, WordAt&& word_at, std::vector<int>& out) {
  out.clear();
  for (int w = 0; w < words; ++w) {
    std::uint64_t x = word_at(w);
    while (x) {
      out.push_back(w * 64 + std::countr_zero(x));
      x &= x - 1;
    }
  }
}

/// Counts size-d subsets of `cand` (sorted ascending by degree) whose
/// degrees sum to `target`, stopping at 2. The match argument receives the
/// vertices of the first subset found.
int count_subsets(const std::vector<std::pair<std::int64_t, int>>& cand, int d,
                  std::int64_t target, std::vector<int>& match) {
  const int m = static_cast<int>(cand.size());
  if (d > m) return 0;
  std::vector<std::int64_t> prefix(m + 1, 0);
  for (int i = 0; i < m; ++i) prefix[i + 1] = prefix[i] + cand[i].first;

  match.clear();
  std::vector<int> chosen;
  chosen.reserve(d);
  int found = 0;

  auto rec = [&](auto&& self, int pos, int slots, std::int64_t t) -> void {
    if (found >= 2) return;
    if (slots == 0) {
      if (t == 0) {
        if (found == 0) match = chosen;
        ++found;
      }
      return;
    }
    if (m - pos < slots) return;
    const std::int64_t min_sum = prefix[pos + slots] - prefix[pos];
    const std::int64_t max_sum = prefix[m] - prefix[m - slots];
    if (t < min_sum || t > max_sum) return;
    chosen.push_back(cand[pos].second);
    self(self, pos + 1, slots - 1, t - cand[pos].first);
    chosen.pop_back();
    if (found >= 2) return;
    self(self, pos + 1, slots, t);
  };
  rec(rec, 0, d, target);
  return found;
}

void run_degree_combination(Ctx& c, int max_degree) {
  const int n = c.gstar.size();
  std::vector<std::pair<std::int64_t, int>> cand;
  std::vector<int> match;
  for (int u = 0; u < n; ++u) {
    const std::int64_t d = c.g2.at(u, u);
    if (d > max_degree) continue;
    const std::int64_t s = c.cache.row_sums[u];
    // Γ(u) has d members of degree >= 1 whose degrees sum to s, so no
    // neighbor's degree can exceed s - d + 1.
    const std::int64_t limit = s - d + 1;
    cand.clear();
    for (int v = 0; v < n; ++v) {
      if (v == u) continue;
      const std::int64_t dv = c.g2.at(v, v);
      if (dv < 1 || dv > limit) {
        c.put(u, v, Cell::Zero);
        continue;
      }
      if (c.gstar.at(u, v) != Cell::Zero) cand.emplace_back(dv, v);
    }
    std::sort(cand.begin(), cand.end());
    const int found = count_subsets(cand, static_cast<int>(d), s, match);
    if (found == 0) {
      c.row_conflict(u);
      continue;
    }
    if (found != 1) continue;
    // Unique candidate set: it is exactly Γ(u).
    if (c.mark.size() < static_cast<std::size_t>(n)) c.mark.assign(n, 0);
    for (int w : match) c.mark[w] = 1;
    for (int w : match) c.put(u, w, Cell::One);
    for (const auto& [dv, v] : cand)
      if (!c.mark[v]) c.put(u, v, Cell::Zero);
    for (int w : match) c.mark[w] = 0;
  }
}

void run_degree_matching(Ctx& c) {
  const int n = c.gstar.size();
  const int words = c.gstar.words();
  for (int u = 0; u < n; ++u) {
    const int ku = c.gstar.known_degree(u);
    const std::int32_t d = c.g2.at(u, u);
    if (ku > d) {
      c.count_conflict(u, u);
      continue;
    }
    if (ku != d || c.gstar.unknown_in_row(u) == 0) continue;
    const auto nz = c.gstar.not_zero_row(u);
    const auto one = c.gstar.one_row(u);
    collect_bits(words, [&](int w) { return nz[w] & ~one[w]; }, c.scratch);
    for (int v : c.scratch) c.put(u, v, Cell::Zero);
  }
}

void run_neighbor_matching(Ctx& c) {
  const int n = c.gstar.size();
  const int words = c.gstar.words();
  for (int u = 0; u < n; ++u) {
    const bool u_empty = c.gstar.known_degree(u) == 0;
    for (int v = u + 1; v < n; ++v) {
      if (u_empty && c.gstar.known_degree(v) == 0) continue;
      const int cm = c.gstar.common_known(u, v);
      const std::int32_t k = c.g2.at(u, v);
      if (cm > k) {
        c.count_conflict(u, v);
        continue;
      }
      if (cm != k) continue;
      const auto one_u = c.gstar.one_row(u);
      const auto one_v = c.gstar.one_row(v);
      if (c.gstar.known_degree(u) > cm) {
        collect_bits(words, [&](int w) { return one_u[w] & ~one_v[w]; }, c.scratch);
        for (int w : c.scratch) c.put(w, v, Cell::Zero);
      }
      if (c.gstar.known_degree(v) > cm) {
        collect_bits(words, [&](int w) { return one_v[w] & ~one_u[w]; }, c.scratch);
        for (int w : c.scratch) c.put(w, u, Cell::Zero);
      }
    }
  }
}

void run_degree_completion(Ctx& c) {
  const int n = c.gstar.size();
  const int words = c.gstar.words();
  for (int u = 0; u < n; ++u) {
    const int ku = c.gstar.known_degree(u);
    const int unk = c.gstar.unknown_in_row(u);
    const std::int32_t d = c.g2.at(u, u);
    if (d > ku + unk) {
      c.count_conflict(u, u);
      continue;
    }
    if (unk == 0 || d != ku + unk) continue;
    const auto nz = c.gstar.not_zero_row(u);
    const auto one = c.gstar.one_row(u);
    collect_bits(words, [&](int w) { return nz[w] & ~one[w]; }, c.scratch);
    for (int v : c.scratch) c.put(u, v, Cell::One);
  }
}

void run_neighbor_completion(Ctx& c) {
  const int n = c.gstar.size();
  const int words = c.gstar.words();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const std::int32_t target = c.g2.at(u, v);
      const int cm = c.gstar.common_known(u, v);
      const int k = target - cm;
      if (k < 0) {
        c.count_conflict(u, v);
        continue;
      }
      if (k == 0) continue;
      // W: vertices that could still become common neighbors.
      const int wcount = c.gstar.potential_common(u, v) - cm;
      if (wcount < k) {
        c.count_conflict(u, v);
        continue;
      }
      if (wcount != k) continue;
      const auto nz_u = c.gstar.not_zero_row(u);
      const auto nz_v = c.gstar.not_zero_row(v);
      const auto one_u = c.gstar.one_row(u);
      const auto one_v = c.gstar.one_row(v);
      collect_bits(
          words, [&](int w) { return (nz_u[w] & nz_v[w]) & ~(one_u[w] & one_v[w]); }, c.scratch);
      for (int w : c.scratch) {
        c.put(u, w, Cell::One);
        c.put(v, w, Cell::One);
      }
    }
  }
}

void run_triangle(Ctx& c) {
  const int n = c.gstar.size();
  const int words = c.cache.words;
  std::vector<VertexPair> edges;
  for (int u = 0; u < n; ++u)
    for (int v : c.gstar.known_neighbors(u))
      if (u < v) edges.emplace_back(u, v);

  for (const auto& [u, v] : edges) {
    const std::int32_t k = c.g2.at(u, v);
    if (k <= 0) continue;
    const auto su = c.cache.row(u);
    const auto sv = c.cache.row(v);
    int count = 0;
    for (int w = 0; w < words; ++w) count += std::popcount(su[w] & sv[w]);
    if (count < k) {
      c.count_conflict(u, v);
      continue;
    }
    if (count != k) continue;
    collect_bits(words, [&](int w) { return su[w] & sv[w]; }, c.scratch);
    for (int w : c.scratch) {
      c.put(u, w, Cell::One);
      c.put(v, w, Cell::One);
    }
  }
}

void run_biclique(Ctx& c) {
  const int n = c.gstar.size();
  const int words = c.gstar.words();
  for (int u = 0; u < n; ++u) {
    const std::int32_t d = c.g2.at(u, u);
    if (c.gstar.known_degree(u) != d) continue;  // needs a complete neighborhood
    const std::vector<int>& gu = c.gstar.known_neighbors(u);
    for (int v = 0; v < n; ++v) {
      if (v == u) continue;
      if (c.g2.at(u, v) == d) {
        // Γ(u) ⊆ Γ(v): v is adjacent to every known neighbor of u.
        for (int w : gu) c.put(v, w, Cell::One);
      } else {
        const int mg = c.g2.at(v, v) - c.gstar.known_degree(v);
        const int mg2 = c.g2.at(u, v) - c.gstar.common_known(u, v);
        if (mg < 0) {
          c.count_conflict(v, v);
          continue;
        }
        if (mg2 < 0) {
          c.count_conflict(u, v);
          continue;
        }
        if (mg != mg2) continue;
        // Every missing neighbor of v lies inside Γ*(u).
        const auto nz_v = c.gstar.not_zero_row(v);
        const auto one_v = c.gstar.one_row(v);
        const auto one_u = c.gstar.one_row(u);
        collect_bits(words, [&](int w) { return (nz_v[w] & ~one_v[w]) & ~one_u[w]; }, c.scratch);
        for (int w : c.scratch) c.put(v, w, Cell::Zero);
      }
    }
  }
}

long long run_one(Attack a, Ctx& c, int max_degree) {
  c.current = a;
  const long long before = c.changes;
  switch (a) {
    case Attack::degree_combination: run_degree_combination(c, max_degree); break;
    case Attack::degree_matching: run_degree_matching(c); break;
    case Attack::neighbor_matching: run_neighbor_matching(c); break;
    case Attack::degree_completion: run_degree_completion(c); break;
    case Attack::neighbor_completion: run_neighbor_completion(c); break;
    case Attack::triangle: run_triangle(c); break;
    case Attack::biclique: run_biclique(c); break;
  }
  return c.changes - before;
}

void check_inputs(const TriStateAdjacency& gstar, const CommonNeighborsMatrix& g2,
                  int max_degree) {
  if (gstar.size() != g2.size())
    throw error(errc::contract, "G* and g2 must have the same vertex count");
  if (max_degree < 0) throw error(errc::contract, "max_degree must be non-negative");
}

AttackOutcome run_single(Attack a, TriStateAdjacency gstar, const CommonNeighborsMatrix& g2,
                         int max_degree) {
  check_inputs(gstar, g2, max_degree);
  const G2Cache cache(g2);
  AttackOutcome out{std::move(gstar), 0, {}};
  Ctx c{out.updated, g2, cache, out.conflicts};
  out.changes = run_one(a, c, max_degree);
  return out;
}

void dedupe(std::vector<Conflict>& conflicts) {
  auto key = [](const Conflict& c) {
    return std::make_tuple(static_cast<int>(c.kind), c.u, c.v, static_cast<int>(c.existing),
                           static_cast<int>(c.attempted), static_cast<int>(c.source));
  };
  std::sort(conflicts.begin(), conflicts.end(),
            [&](const Conflict& a, const Conflict& b) { return key(a) < key(b); });
  conflicts.erase(std::unique(conflicts.begin(), conflicts.end()), conflicts.end());
}

}  // namespace

AttackOutcome degree_combination_attack(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2,
                                        int max_degree) {
  return run_single(Attack::degree_combination, std::move(gstar), g2, max_degree);
}
AttackOutcome degree_matching_attack(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2) {
  return run_single(Attack::degree_matching, std::move(gstar), g2, 0);
}
AttackOutcome neighbor_matching_attack(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2) {
  return run_single(Attack::neighbor_matching, std::move(gstar), g2, 0);
}
AttackOutcome degree_completion_attack(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2) {
  return run_single(Attack::degree_completion, std::move(gstar), g2, 0);
}
AttackOutcome neighbor_completion_attack(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2) {
  return run_single(Attack::neighbor_completion, std::move(gstar), g2, 0);
}
AttackOutcome triangle_attack(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2) {
  return run_single(Attack::triangle, std::move(gstar), g2, 0);
}
AttackOutcome biclique_attack(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2) {
  return run_single(Attack::biclique, std::move(gstar), g2, 0);
}

TriStateAdjacency run_attacks_to_fixpoint(TriStateAdjacency gstar, const CommonNeighborsMatrix& g2,
                                          const FixpointOptions& options, FixpointStats* stats) {
  check_inputs(gstar, g2, options.max_combination_degree);
  {
    std::array<int, kAttackCount> seen{};
    for (Attack a : options.order) ++seen[static_cast<int>(a)];
    for (int s : seen)
      if (s != 1) throw error(errc::contract, "attack order must be a permutation of all attacks");
  }
  FixpointStats local;
  FixpointStats& st = stats ? *stats : local;
  st = FixpointStats{};

  const G2Cache cache(g2);
  std::vector<Conflict> conflicts;
  Ctx c{gstar, g2, cache, conflicts};
  for (;;) {
    long long cycle_changes = 0;
    for (Attack a : options.order) {
      const long long ch = run_one(a, c, options.max_combination_degree);
      st.changes_by_attack[static_cast<int>(a)] += ch;
      cycle_changes += ch;
      if (!options.tolerate_conflicts && !conflicts.empty())
        throw error(errc::inconsistent, describe(conflicts.front()));
    }
    ++st.cycles;
    if (cycle_changes == 0) break;
  }
  st.total_changes = c.changes;
  dedupe(conflicts);
  st.conflicts = std::move(conflicts);
  return gstar;
}

TriStateAdjacency topological_fixpoint(const KnowledgeSet& knowledge,
                                       const CommonNeighborsMatrix& g2,
                                       const FixpointOptions& options, FixpointStats* stats) {
  return run_attacks_to_fixpoint(init_partial(g2.size(), knowledge), g2, options, stats);
}

}  // namespace grand
