#include "grand/metrics.hpp"

#include <cmath>

namespace grand {

namespace {

/// Squared Frobenius distance and squared norm of the reference, in exact
/// integer arithmetic over all n^2 entries.
std::pair<std::int64_t, std::int64_t> frobenius_sq(const CommonNeighborsMatrix& ref,
                                                   const CommonNeighborsMatrix& other) {
  std::int64_t diff = 0, norm = 0;
  const int n = ref.size();
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const std::int64_t r = ref.at(u, v);
      const std::int64_t d = r - other.at(u, v);
      diff += d * d;
      norm += r * r;
    }
  return {diff, norm};
}

}  // namespace

MetricsReport evaluate(const BinaryGraph& g, const BinaryGraph& ghat) {
  const int n = g.size();
  if (ghat.size() != n) throw error(errc::contract, "graphs must have the same vertex count");
  if (g.edge_count() == 0)
    throw error(errc::undefined_metric, "metrics are undefined for an edgeless reference graph");

  MetricsReport r;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const bool truth = g.has_edge(u, v);
      const bool guess = ghat.has_edge(u, v);
      if (truth && guess)
        ++r.true_positives;
      else if (!truth && guess)
        ++r.false_positives;
      else if (truth && !guess)
        ++r.false_negatives;
      else
        ++r.true_negatives;
    }

  const std::int64_t positives = r.true_positives + r.false_negatives;
  const std::int64_t negatives = r.true_negatives + r.false_positives;
  r.fpr = negatives > 0 ? static_cast<double>(r.false_positives) / static_cast<double>(negatives)
                        : 0.0;
  r.fnr = static_cast<double>(r.false_negatives) / static_cast<double>(positives);

  // ||G - Ghat||_F^2 = 2 (FP + FN) and ||G||_F^2 = 2 |E| for 0/1 symmetric
  // matrices with zero diagonals.
  r.rae = std::sqrt(static_cast<double>(2 * (r.false_positives + r.false_negatives)) /
                    static_cast<double>(2 * positives));

  const auto [diff, norm] = frobenius_sq(square(g), square(ghat));
  r.cne = std::sqrt(static_cast<double>(diff) / static_cast<double>(norm));
  return r;
}

double cne_against(const CommonNeighborsMatrix& g2, const BinaryGraph& ghat) {
  if (ghat.size() != g2.size())
    throw error(errc::contract, "graph and matrix must have the same vertex count");
  const auto [diff, norm] = frobenius_sq(g2, square(ghat));
  if (norm == 0) return diff == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(static_cast<double>(diff) / static_cast<double>(norm));
}

}  // namespace grand
