#include <doctest.h>

#include <cmath>
#include <random>

#include "grand/metrics.hpp"
#include "testing.hpp"

using namespace grand;
namespace tst = grand::testing;

TEST_SUITE_BEGIN("metrics");

TEST_CASE("identical graphs score zero everywhere") {
  const BinaryGraph g = tst::er_graph(12, 0.4, 3);
  const MetricsReport r = evaluate(g, g);
  CHECK(r.perfect());
  CHECK(r.false_positives == 0);
  CHECK(r.false_negatives == 0);
}

TEST_CASE("triangle versus empty graph") {
  const MetricsReport r = evaluate(tst::complete_graph(3), BinaryGraph(3));
  CHECK(r.fnr == 1.0);
  CHECK(r.fpr == 0.0);
  CHECK(r.rae == 1.0);
  CHECK(r.cne == 1.0);
}

TEST_CASE("the co-square pair has positive RAE but zero CNE") {
  const MetricsReport r = evaluate(tst::six_cycle(), tst::two_triangles());
  CHECK(r.rae > 0.0);
  CHECK(r.cne == 0.0);
}

TEST_CASE("evaluate rejects an edgeless reference") {
  CHECK_THROWS_AS(evaluate(BinaryGraph(3), BinaryGraph(3)), error);
}

TEST_CASE("evaluate rejects mismatched sizes") {
  CHECK_THROWS_AS(evaluate(tst::complete_graph(3), BinaryGraph(4)), error);
}

TEST_CASE("RAE identity: rae^2 * |G|_F^2 equals 2 (FP + FN)") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 20);
    const BinaryGraph g = tst::er_graph(n, 0.4, rng());
    if (g.edge_count() == 0) continue;
    const BinaryGraph h = tst::er_graph(n, 0.4, rng());
    const MetricsReport r = evaluate(g, h);
    // both sides are integers; require exact equality
    std::int64_t diff_sq = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (g.has_edge(u, v) != h.has_edge(u, v)) diff_sq += 2;
    const std::int64_t norm_sq = 2 * g.edge_count();
    CHECK(diff_sq == 2 * (r.false_positives + r.false_negatives));
    CHECK(r.rae == doctest::Approx(std::sqrt(static_cast<double>(diff_sq) /
                                             static_cast<double>(norm_sq)))
                       .epsilon(1e-12));
  }
}

TEST_CASE("zero CNE characterizes equal squares") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);
    const BinaryGraph g = tst::er_graph(n, 0.5, rng());
    if (g.edge_count() == 0) continue;
    const BinaryGraph h = tst::er_graph(n, 0.5, rng());
    const MetricsReport r = evaluate(g, h);
    CHECK((r.cne == 0.0) == (square(g) == square(h)));
  }
  // and every oracle solution reaches CNE = 0
  const CommonNeighborsMatrix g2 = square(tst::six_cycle());
  for (const BinaryGraph& h : cosquare_oracle(g2, 6))
    CHECK(evaluate(tst::six_cycle(), h).cne == 0.0);
}

TEST_CASE("cne_against tracks the matrix directly") {
  const BinaryGraph g = tst::er_graph(10, 0.3, 5);
  REQUIRE(g.edge_count() > 0);
  CHECK(cne_against(square(g), g) == 0.0);
  CHECK(cne_against(square(g), BinaryGraph(10)) == 1.0);
}

TEST_SUITE_END();
