// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "brg/fermion.hpp"
#include "brg/integral_set.hpp"

namespace brg {

/// One term w * v (x) v of the eigendecomposition of the (pq),(rs) supermatrix.
struct RankOneFragment {
  double w = 0.0;
  Eigen::MatrixXd v;  // symmetric, unit Frobenius norm
};

/// Fragments with |w| > max(threshold, 1e-12), sorted by |w| descending.
/// Throws std::invalid_argument when v lacks the eight-fold symmetry.
std::vector<RankOneFragment> eigen_factorize(const IntegralSet& integrals, double threshold = 0.0);

/// sqrt of the sum of squared eigenvalues that eigen_factorize drops at `threshold`;
/// equals the Frobenius norm of the reconstruction residual.
double discarded_frobenius_norm(const IntegralSet& integrals, double threshold);

/// sum_p g_p n_p in the orbital basis rotated by U (columns are the new orbitals).
struct OneBodyFragment {
  Eigen::VectorXd g;
  Eigen::MatrixXd u;
};

/// sum_{pq} G_pq n_p n_q with n_p = n_{p,up} + n_{p,down}, in the basis rotated by U.
struct TwoBodyFragment {
  Eigen::MatrixXd g;
  Eigen::MatrixXd u;
  double w = 0.0;
  Eigen::VectorXd lambda;  // eigenvalues of the source v
};

struct FactorizedHamiltonian {
  int n_spatial = 0;
  double constant = 0.0;
  OneBodyFragment one_body;
  std::vector<TwoBodyFragment> fragments;

  int rank() const { return static_cast<int>(fragments.size()); }

  /// Expand back into ladder operators (normal-ordered). Cost grows as L M^8; meant for small M.
  FermionOperator to_fermion_operator(SpinLayout layout = SpinLayout::kBlock) const;

  /// Integrals (h', V') whose Hamiltonian equals this factorized form.
  IntegralSet to_integral_set() const;
};

/// T_ps = h_ps - 1/2 sum_q (pq|qs), the one-body part once the two-body term
/// is written as 1/2 sum V_pqrs E_pq E_rs.
Eigen::MatrixXd chemist_one_body(const IntegralSet& integrals);

FactorizedHamiltonian assemble(const IntegralSet& integrals, const std::vector<RankOneFragment>& fragments);

inline FactorizedHamiltonian factorize(const IntegralSet& integrals, double threshold = 0.0) {
  return assemble(integrals, eigen_factorize(integrals, threshold));
}

struct TruncationReport {
  int kept = 0;
  double frobenius_error = 0.0;
  std::optional<double> ground_energy_shift;
};

/// `ground_energy` maps a FermionOperator to its ground energy in the sector of interest;
/// when given, the shift E(truncated) - E(full) is reported.
TruncationReport truncation_error(const IntegralSet& integrals, double threshold,
                                  const std::function<double(const FermionOperator&)>& ground_energy = {});

/// Orthogonal eigenvectors with det +1, columns paired with ascending eigenvalues.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};
SymmetricEigen special_orthogonal_eigen(const Eigen::MatrixXd& symmetric);

}  // namespace brg
