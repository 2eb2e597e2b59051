#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "grand/pipeline.hpp"
#include "grand/spectral.hpp"
#include "grand/topo_attacks.hpp"
#include "testing.hpp"

using namespace grand;
namespace tst = grand::testing;

namespace {

double reconstruction_residual(const EigenSystem& es, const CommonNeighborsMatrix& g2) {
  const int n = g2.size();
  const Eigen::MatrixXd recon =
      es.vectors * es.values.asDiagonal() * es.vectors.transpose();
  double diff = 0.0, norm = 0.0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const double r = static_cast<double>(g2.at(u, v));
      diff += (recon(u, v) - r) * (recon(u, v) - r);
      norm += r * r;
    }
  return norm == 0.0 ? std::sqrt(diff) : std::sqrt(diff / norm);
}

}  // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("eigendecompose of the zero matrix") {
  const EigenSystem es = eigendecompose(CommonNeighborsMatrix(4));
  for (int i = 0; i < 4; ++i) CHECK(es.values(i) == 0.0);
}

TEST_CASE("eigendecompose of the triangle square") {
  const EigenSystem es = eigendecompose(square(tst::complete_graph(3)));
  CHECK(es.values(0) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(es.values(1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(es.values(2) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("eigendecompose of the six-cycle square") {
  const EigenSystem es = eigendecompose(square(tst::six_cycle()));
  const double expect[] = {4, 4, 1, 1, 1, 1};
  for (int i = 0; i < 6; ++i) CHECK(es.values(i) == doctest::Approx(expect[i]).epsilon(1e-9));
}

TEST_CASE("eigendecompose residual and psd floor on random graphs") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 28);
    const BinaryGraph g = tst::er_graph(n, 0.3, rng());
    const CommonNeighborsMatrix g2 = square(g);
    const EigenSystem es = eigendecompose(g2);
    CHECK(reconstruction_residual(es, g2) <= 1e-8);
    for (int i = 0; i < n; ++i) CHECK(es.values(i) >= 0.0);
    // orthonormality
    const Eigen::MatrixXd gram = es.vectors.transpose() * es.vectors;
    CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("eigenvalues of the square are squared graph eigenvalues") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 28);
    const BinaryGraph g = tst::er_graph(n, 0.4, rng());
    const std::vector<double> spec = adjacency_spectrum(g);
    std::vector<double> squared(spec.size());
    std::transform(spec.begin(), spec.end(), squared.begin(), [](double x) { return x * x; });
    std::sort(squared.begin(), squared.end(), std::greater<>());
    const EigenSystem es = eigendecompose(square(g));
    for (int i = 0; i < n; ++i) CHECK(std::abs(es.values(i) - squared[i]) <= 1e-8);
  }
}

TEST_CASE("default beta conventions") {
  CHECK(default_beta(TriStateAdjacency(10)) == 0.0);

  TriStateAdjacency full(10);
  for (int u = 0; u < 10; ++u)
    for (int v = u + 1; v < 10; ++v) full.write(u, v, Cell::Zero);
  CHECK(default_beta(full) == doctest::Approx(0.9));
  CHECK(default_beta_pair_fraction(full) == doctest::Approx(1.0));

  TriStateAdjacency half(4);
  half.write(0, 1, Cell::One);
  half.write(0, 2, Cell::Zero);
  half.write(0, 3, Cell::One);
  CHECK(default_beta(half) == doctest::Approx(0.375));
}

TEST_CASE("spectral attack with full knowledge reproduces the known graph") {
  // paw graph: triangle plus a pendant; all |eigenvalues| distinct
  const BinaryGraph g = tst::make(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  const CommonNeighborsMatrix g2 = square(g);
  const TriStateAdjacency full = init_partial(4, sample_knowledge(g, 1.0, 1));
  const SpectralConfig cfg{0.0, 1.0, 0.5, 1e-9};
  const BinaryGraph out = spectral_attack(full, eigendecompose(g2), cfg);
  CHECK(out == g);
}

TEST_CASE("degenerate eigenspaces can defeat the bare greedy; the pipeline closes the gap") {
  // Repeated eigenvalues leave the solver free to pick any orthonormal basis
  // of the eigenspace, and the greedy's sign choices act inside that basis.
  // Square consistency of the bare spectral attack is therefore not
  // guaranteed on such inputs; the full pipeline is.
  const CommonNeighborsMatrix k3 = square(tst::complete_graph(3));
  const SpectralConfig cfg{1.0, 0.0, 0.5, 1e-9};
  const BinaryGraph bare = spectral_attack(TriStateAdjacency(3), eigendecompose(k3), cfg);
  CHECK(bare == spectral_attack(TriStateAdjacency(3), eigendecompose(k3), cfg));
  const auto [k3_out, k3_trace] = run_grand(k3, {});
  CHECK(k3_out == tst::complete_graph(3));  // unique co-square solution

  const CommonNeighborsMatrix p4 = square(tst::path_graph(4));
  REQUIRE(cosquare_oracle(p4).size() == 1);  // the 4-path is uniquely determined
  const auto [p4_out, p4_trace] = run_grand(p4, {});
  CHECK(square(p4_out) == p4);
  CHECK(p4_out == tst::path_graph(4));
}

TEST_CASE("greedy never keeps the worse branch") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const BinaryGraph g = tst::er_graph(n, 0.4, rng());
    const TriStateAdjacency partial = init_partial(n, sample_knowledge(g, 0.3, rng()));
    const double beta = default_beta(partial);
    const SpectralConfig cfg{1.0 - beta, beta, 0.5, 1e-9};
    std::vector<SpectralStep> steps;
    spectral_attack(partial, eigendecompose(square(g)), cfg, &steps);
    REQUIRE(static_cast<int>(steps.size()) == n);
    for (const auto& s : steps) {
      const double kept = s.sign > 0 ? s.d_plus : s.d_minus;
      const double dropped = s.sign > 0 ? s.d_minus : s.d_plus;
      CHECK(kept <= dropped);
    }
  }
}

TEST_CASE("spectral attack is deterministic") {
  const BinaryGraph g = tst::er_graph(15, 0.3, 8);
  const CommonNeighborsMatrix g2 = square(g);
  const TriStateAdjacency partial = init_partial(15, sample_knowledge(g, 0.2, 4));
  const SpectralConfig cfg{0.6, 0.4, 0.5, 1e-9};
  const EigenSystem es = eigendecompose(g2);
  CHECK(spectral_attack(partial, es, cfg) == spectral_attack(partial, es, cfg));
}

TEST_CASE("spectral attack validates inputs") {
  const EigenSystem es = eigendecompose(square(tst::complete_graph(3)));
  CHECK_THROWS_AS(spectral_attack(TriStateAdjacency(4), es, {}), error);
}

TEST_CASE("error forgetting keeps an exact reconstruction untouched") {
  const BinaryGraph g = tst::er_graph(10, 0.3, 11);
  const CommonNeighborsMatrix g2 = square(g);
  const TriStateAdjacency topo = topological_fixpoint(sample_knowledge(g, 0.2, 2), g2);
  const TriStateAdjacency out = targeted_error_forgetting(g, topo, g2);
  CHECK(out.unknown_pair_count() == 0);
  CHECK(finalize(out) == g);
}

TEST_CASE("error forgetting reverts the rows touched by a wrong edge") {
  const BinaryGraph g = tst::make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const CommonNeighborsMatrix g2 = square(g);
  const TriStateAdjacency topo(5);  // all unknown

  BinaryGraph wrong = g;
  wrong.add_edge(0, 4);  // one flipped cell
  const TriStateAdjacency out = targeted_error_forgetting(wrong, topo, g2);

  const CommonNeighborsMatrix bad = square(wrong);
  std::vector<char> reverted(5, 0);
  for (int u = 0; u < 5; ++u)
    for (int v = u; v < 5; ++v)
      if (bad.at(u, v) != g2.at(u, v)) reverted[u] = reverted[v] = 1;
  REQUIRE(reverted[0]);
  REQUIRE(reverted[4]);

  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) {
      if (reverted[u] || reverted[v])
        CHECK(out.at(u, v) == topo.at(u, v));
      else
        CHECK(out.at(u, v) == (wrong.has_edge(u, v) ? Cell::One : Cell::Zero));
    }
}

TEST_CASE("error forgetting cannot detect a co-square substitute") {
  const CommonNeighborsMatrix g2 = square(tst::six_cycle());
  const TriStateAdjacency topo = topological_fixpoint({}, g2);
  const TriStateAdjacency out = targeted_error_forgetting(tst::two_triangles(), topo, g2);
  CHECK(out.unknown_pair_count() == 0);
  CHECK(finalize(out) == tst::two_triangles());
}

TEST_CASE("error forgetting never contradicts the topological result") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 8 + static_cast<int>(rng() % 10);
    const BinaryGraph g = tst::er_graph(n, 0.3, rng());
    const CommonNeighborsMatrix g2 = square(g);
    const TriStateAdjacency topo = topological_fixpoint(sample_knowledge(g, 0.2, rng()), g2);
    BinaryGraph guess = tst::er_graph(n, 0.3, rng());
    const TriStateAdjacency out = targeted_error_forgetting(guess, topo, g2);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        if (out.at(u, v) == Cell::Unknown) continue;
        if (topo.at(u, v) == Cell::Unknown) continue;
        // a reverted cell equals the topological value by construction;
        // kept cells come from the guess and may only disagree where the
        // pipeline later re-asserts, so only check reverted rows here
        if (out.at(u, v) != (guess.has_edge(u, v) ? Cell::One : Cell::Zero))
          CHECK(out.at(u, v) == topo.at(u, v));
      }
  }
}

TEST_SUITE_END();
