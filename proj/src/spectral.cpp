#include "grand/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace grand {

namespace {

Eigen::MatrixXd to_dense(const CommonNeighborsMatrix& g2) {
  const int n = g2.size();
  Eigen::MatrixXd m(n, n);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u) m(u, v) = static_cast<double>(g2.at(u, v));
  return m;
}

}  // namespace

EigenSystem eigendecompose(const CommonNeighborsMatrix& g2, double eigenvalue_floor) {
  const int n = g2.size();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_dense(g2));
  if (solver.info() != Eigen::Success)
    throw error(errc::numerical, "eigendecomposition did not converge");

  EigenSystem es;
  es.values.resize(n);
  es.vectors.resize(n, n);
  // Eigen sorts ascending; flip to descending and clamp noise at the floor.
  for (int i = 0; i < n; ++i) {
    double v = solver.eigenvalues()(n - 1 - i);
    if (v < eigenvalue_floor) v = 0.0;
    es.values(i) = v;
    es.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return es;
}

std::vector<double> adjacency_spectrum(const BinaryGraph& g) {
  const int n = g.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u)) m(u, v) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw error(errc::numerical, "eigendecomposition did not converge");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()(n - 1 - i);
  return out;
}

double default_beta(const TriStateAdjacency& gstar) {
  const int n = gstar.size();
  if (n == 0) return 0.0;
  const double beta =
      2.0 * static_cast<double>(gstar.determined_pairs()) / (static_cast<double>(n) * n);
  return std::min(beta, 1.0);
}

double default_beta_pair_fraction(const TriStateAdjacency& gstar) {
  const int n = gstar.size();
  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  if (pairs == 0.0) return 1.0;
  return std::min(static_cast<double>(gstar.determined_pairs()) / pairs, 1.0);
}

BinaryGraph spectral_attack(const TriStateAdjacency& gstar, const EigenSystem& es,
                            const SpectralConfig& cfg, std::vector<SpectralStep>* steps) {
  const int n = gstar.size();
  if (es.values.size() != n || es.vectors.rows() != n || es.vectors.cols() != n)
    throw error(errc::contract, "eigensystem dimensions do not match G*");
  if (cfg.alpha < 0.0 || cfg.beta < 0.0)
    throw error(errc::contract, "alpha and beta must be non-negative");
  if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0))
    throw error(errc::contract, "threshold must lie in (0, 1)");
  if (steps) steps->clear();

  // Determined cells and their 0/1 targets, each unordered pair once.
  struct Known {
    int u, v;
    double target;
  };
  std::vector<Known> known;
  known.reserve(static_cast<std::size_t>(gstar.determined_pairs()));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const Cell c = gstar.at(u, v);
      if (c != Cell::Unknown) known.push_back({u, v, c == Cell::One ? 1.0 : 0.0});
    }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(es.values(a)) > std::abs(es.values(b));
  });

  const double t = cfg.threshold;
  auto binariness = [t](double x) {
    const double d = x - (x > t ? 1.0 : 0.0);
    return d * d;
  };

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd outer(n, n);
  for (int i : order) {
    const double lambda = std::max(es.values(i), 0.0);
    const double sigma = std::sqrt(lambda);
    outer.noalias() = sigma * (es.vectors.col(i) * es.vectors.col(i).transpose());

    double bin_plus = 0.0, bin_minus = 0.0;
    {
      const double* mp = m.data();
      const double* op = outer.data();
      const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(n) * n;
      for (std::ptrdiff_t j = 0; j < total; ++j) {
        bin_plus += binariness(mp[j] + op[j]);
        bin_minus += binariness(mp[j] - op[j]);
      }
    }
    double fit_plus = 0.0, fit_minus = 0.0;
    for (const Known& k : known) {
      const double base = m(k.u, k.v);
      const double delta = outer(k.u, k.v);
      const double ep = base + delta - k.target;
      const double em = base - delta - k.target;
      fit_plus += ep * ep;
      fit_minus += em * em;
    }

    const double d_plus = cfg.alpha * std::sqrt(bin_plus) + cfg.beta * std::sqrt(fit_plus);
    const double d_minus = cfg.alpha * std::sqrt(bin_minus) + cfg.beta * std::sqrt(fit_minus);
    const int sign = d_minus < d_plus ? -1 : +1;  // tie keeps +
    if (sign > 0)
      m.noalias() += outer;
    else
      m.noalias() -= outer;
    if (steps) steps->push_back({d_plus, d_minus, sign});
  }

  BinaryGraph out(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (m(u, v) > t) out.add_edge(u, v);
  return out;
}

TriStateAdjacency targeted_error_forgetting(const BinaryGraph& spec_result,
                                            const TriStateAdjacency& topo_result,
                                            const CommonNeighborsMatrix& g2) {
  const int n = spec_result.size();
  if (topo_result.size() != n || g2.size() != n)
    throw error(errc::contract, "targeted_error_forgetting inputs must share a vertex count");

  const CommonNeighborsMatrix actual = square(spec_result);
  std::vector<char> revert(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v)
      if (actual.at(u, v) != g2.at(u, v)) {
        revert[u] = 1;
        revert[v] = 1;
      }

  TriStateAdjacency out(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const Cell value = (revert[u] || revert[v])
                             ? topo_result.at(u, v)
                             : (spec_result.has_edge(u, v) ? Cell::One : Cell::Zero);
      out.write(u, v, value);
    }
  return out;
}

}  // namespace grand
