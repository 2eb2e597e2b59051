#pragma once

#include <Eigen/Dense>
#include <vector>

#include "grand/graph.hpp"

namespace grand {

/// Eigendecomposition of g2, eigenvalues sorted descending and clamped at
/// the configured floor (g2 is psd in exact arithmetic, so anything below
/// the floor is numerical noise). Column i of `vectors` pairs with
/// `values[i]`.
struct EigenSystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

EigenSystem eigendecompose(const CommonNeighborsMatrix& g2, double eigenvalue_floor = 1e-9);

/// Spectrum of a graph's adjacency matrix, sorted descending.
std::vector<double> adjacency_spectrum(const BinaryGraph& g);

struct SpectralConfig {
  double alpha = 1.0;   // weight of the closeness-to-binary objective
  double beta = 0.0;    // weight of the closeness-to-known-cells objective
  double threshold = 0.5;
  double eigenvalue_floor = 1e-9;
};

/// beta = 2*|determined pairs| / n^2.
double default_beta(const TriStateAdjacency& gstar);
/// Alternative convention: fraction of determined unordered pairs, so full
/// knowledge yields exactly 1.
double default_beta_pair_fraction(const TriStateAdjacency& gstar);

/// One greedy sign decision: the two candidate distances and the sign kept
/// (+1 or -1; ties keep +1).
struct SpectralStep {
  double d_plus = 0.0;
  double d_minus = 0.0;
  int sign = +1;
};

/// Greedy sign assignment over u_i*sqrt(lambda_i)*u_i^T terms in descending
/// |lambda| order, scoring each sign by
///   alpha*||M - BM||_F + beta*||(M - G*) restricted to determined pairs||_F
/// and returning the thresholded final matrix with a zero diagonal.
BinaryGraph spectral_attack(const TriStateAdjacency& gstar, const EigenSystem& es,
                            const SpectralConfig& cfg, std::vector<SpectralStep>* steps = nullptr);

/// Reverts the rows of spec_result whose squared counts disagree with g2
/// back to topo_result (reintroducing Unknowns); every other cell keeps
/// spec_result's value lifted into the tri-state matrix.
TriStateAdjacency targeted_error_forgetting(const BinaryGraph& spec_result,
                                            const TriStateAdjacency& topo_result,
                                            const CommonNeighborsMatrix& g2);

}  // namespace grand
