#pragma once

#include <cstdint>

#include "grand/graph.hpp"

namespace grand {

/// Reconstruction quality against the true graph. Rates are taken over
/// unordered off-diagonal pairs; RAE/CNE are relative Frobenius errors of
/// the adjacency matrix and its square.
struct MetricsReport {
  double fpr = 0.0;
  double fnr = 0.0;
  double rae = 0.0;
  double cne = 0.0;
  std::int64_t true_positives = 0;
  std::int64_t false_positives = 0;
  std::int64_t true_negatives = 0;
  std::int64_t false_negatives = 0;

  bool perfect() const { return fpr == 0.0 && fnr == 0.0 && rae == 0.0 && cne == 0.0; }
};

/// Throws undefined_metric when g has no edges (both denominators vanish).
MetricsReport evaluate(const BinaryGraph& g, const BinaryGraph& ghat);

/// ||g2 - square(ghat)||_F / ||g2||_F, usable without the true graph.
double cne_against(const CommonNeighborsMatrix& g2, const BinaryGraph& ghat);

}  // namespace grand
