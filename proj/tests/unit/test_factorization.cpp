// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "brg/factorization.hpp"
#include "brg/fermion.hpp"
#include "brg/integrals.hpp"
#include "brg/sector.hpp"
#include "oracles.hpp"

namespace brg {
namespace {

double reconstruction_error(const IntegralSet& ints, const std::vector<RankOneFragment>& frags) {
  const int m = ints.n_spatial;
  double sq = 0.0;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) {
          double v = ints.v(p, q, r, s);
          for (const auto& f : frags) v -= f.w * f.v(p, q) * f.v(r, s);
          sq += v * v;
        }
  return std::sqrt(sq);
}

double orthogonality_defect(const Eigen::MatrixXd& u) {
  return (u.transpose() * u - Eigen::MatrixXd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

// Fock-space matrix of the factorized form built directly from number operators in the
// rotated basis, U N U^T, without expanding into ladder terms.
Eigen::MatrixXd factorized_matrix(const FactorizedHamiltonian& f) {
  const int m = f.n_spatial;
  const int dim = 1 << (2 * m);
  auto diagonal_in_rotated_basis = [&](const Eigen::MatrixXd& u, const std::function<double(int)>& value) {
    Eigen::VectorXd d(dim);
    for (int b = 0; b < dim; ++b) d[b] = value(b);
    const Eigen::MatrixXd r = oracle::orbital_rotation_matrix(u);
    return Eigen::MatrixXd(r * d.asDiagonal() * r.transpose());
  };
  auto occ = [m](int b, int p) { return ((b >> p) & 1) + ((b >> (p + m)) & 1); };
  Eigen::MatrixXd total = diagonal_in_rotated_basis(f.one_body.u, [&](int b) {
    double e = 0.0;
    for (int p = 0; p < m; ++p) e += f.one_body.g[p] * occ(b, p);
    return e;
  });
  for (const auto& frag : f.fragments) {
    total += diagonal_in_rotated_basis(frag.u, [&](int b) {
      double e = 0.0;
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) e += frag.g(p, q) * occ(b, p) * occ(b, q);
      return e;
    });
  }
  total.diagonal().array() += f.constant;
  return total;
}

TEST(EigenFactorize, ExactAtZeroThreshold) {
  oracle::Rng rng(31);
  for (int m : {2, 3, 4, 5}) {
    const auto ints = oracle::random_integrals(m, rng);
    const auto frags = eigen_factorize(ints, 0.0);
    EXPECT_LE(static_cast<int>(frags.size()), m * m);
    EXPECT_LT(reconstruction_error(ints, frags), 1e-10);
    for (std::size_t i = 0; i < frags.size(); ++i) {
      EXPECT_LT((frags[i].v - frags[i].v.transpose()).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_NEAR(frags[i].v.norm(), 1.0, 1e-12);
      if (i > 0) {
        EXPECT_GE(std::abs(frags[i - 1].w), std::abs(frags[i].w));
      }
    }
  }
}

TEST(EigenFactorize, H2HasThreeFragments) {
  const auto sys = build_molecular_system(hydrogen_chain(2, 0.7414), "STO-3G");
  // Independent count: eigenvalues of the 4x4 supermatrix.
  Eigen::MatrixXd super(4, 4);
  for (int pq = 0; pq < 4; ++pq)
    for (int rs = 0; rs < 4; ++rs) super(pq, rs) = sys.integrals.v(pq / 2, pq % 2, rs / 2, rs % 2);
  const Eigen::VectorXd w = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(super).eigenvalues();
  int nonzero = 0;
  for (int i = 0; i < 4; ++i) nonzero += std::abs(w[i]) > 1e-12;
  EXPECT_EQ(nonzero, 3);
  EXPECT_EQ(static_cast<int>(eigen_factorize(sys.integrals).size()), nonzero);
}

TEST(EigenFactorize, RejectsAsymmetricTensor) {
  oracle::Rng rng(32);
  auto ints = oracle::random_integrals(3, rng);
  ints.v(0, 1, 2, 0) += 1e-3;
  EXPECT_THROW(eigen_factorize(ints), std::invalid_argument);
}

TEST(EigenFactorize, NegativeEigenvaluesKeptWithSign) {
  oracle::Rng rng(33);
  auto ints = oracle::random_integrals(3, rng);
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(3, 3);
  l(0, 1) = l(1, 0) = 0.7;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q)
      for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) ints.v(p, q, r, s) -= 3.0 * l(p, q) * l(r, s);
  const auto frags = eigen_factorize(ints);
  bool negative = false;
  for (const auto& f : frags) negative = negative || f.w < 0.0;
  EXPECT_TRUE(negative);
  EXPECT_LT(reconstruction_error(ints, frags), 1e-10);
  const auto f = assemble(ints, frags);
  EXPECT_LT((factorized_matrix(f) - oracle::hamiltonian_matrix(ints)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Assemble, ZeroTwoBodyDiagonalizesOneBody) {
  oracle::Rng rng(34);
  auto ints = oracle::random_integrals(4, rng);
  ints.v = Tensor4(4);
  const auto f = factorize(ints);
  EXPECT_EQ(f.rank(), 0);
  const Eigen::MatrixXd t = f.one_body.u * f.one_body.g.asDiagonal() * f.one_body.u.transpose();
  EXPECT_LT((t - ints.h).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((chemist_one_body(ints) - ints.h).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Assemble, DenseOperatorEqualityOnSmallSystems) {
  const auto h2 = build_molecular_system(hydrogen_chain(2, 0.7414), "STO-3G").integrals;
  auto f = factorize(h2);
  EXPECT_LT((factorized_matrix(f) - oracle::hamiltonian_matrix(h2)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((fock_matrix(f.to_fermion_operator(), 4) - oracle::hamiltonian_matrix(h2)).cwiseAbs().maxCoeff(), 1e-10);

  oracle::Rng rng(35);
  for (int m : {3, 4}) {
    const auto ints = oracle::random_integrals(m, rng);
    f = factorize(ints);
    const Eigen::MatrixXd ref = oracle::hamiltonian_matrix(ints);
    EXPECT_LT((factorized_matrix(f) - ref).cwiseAbs().maxCoeff(), 1e-10) << m;
    EXPECT_LT(max_difference(f.to_fermion_operator(), build_hamiltonian(ints)), 1e-10);
    EXPECT_LT((oracle::hamiltonian_matrix(f.to_integral_set()) - ref).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Assemble, RotationsAreSpecialOrthogonal) {
  const auto ints = build_molecular_system(hydrogen_chain(6, 1.0), "STO-3G").integrals;
  const auto f = factorize(ints);
  EXPECT_LT(orthogonality_defect(f.one_body.u), 1e-10);
  EXPECT_GT(f.one_body.u.determinant(), 0.0);
  for (const auto& frag : f.fragments) {
    EXPECT_LT(orthogonality_defect(frag.u), 1e-10);
    EXPECT_GT(frag.u.determinant(), 0.0);
    EXPECT_LT((frag.g - frag.g.transpose()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((frag.g - 0.5 * frag.w * frag.lambda * frag.lambda.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_LE(f.rank(), 36);
}

TEST(Assemble, H8FciEnergyPreserved) {
  const auto ints = build_molecular_system(hydrogen_chain(8, 1.0), "STO-3G").integrals;
  const auto f = factorize(ints);
  const double e0 = fci_ground_state(build_hamiltonian(ints), 8, 4, 4).energy;
  const double e1 = fci_ground_state(build_hamiltonian(f.to_integral_set()), 8, 4, 4).energy;
  EXPECT_NEAR(e0, -4.307571621, 1e-7);
  EXPECT_NEAR(e0, e1, 1e-8);
}

TEST(Truncation, ErrorBehaviour) {
  const auto ints = build_molecular_system(hydrogen_chain(4, 1.0), "STO-3G").integrals;
  auto ground = [](const FermionOperator& h) { return fci_ground_state(h, 4, 2, 2).energy; };
  const auto exact = truncation_error(ints, 0.0, ground);
  EXPECT_LT(exact.frobenius_error, 1e-10);
  ASSERT_TRUE(exact.ground_energy_shift.has_value());
  EXPECT_NEAR(*exact.ground_energy_shift, 0.0, 1e-9);
  EXPECT_FALSE(truncation_error(ints, 0.0).ground_energy_shift.has_value());

  double previous_error = -1.0;
  int previous_kept = 1 << 20;
  for (double thr : {0.0, 1e-6, 1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.3}) {
    const auto rep = truncation_error(ints, thr, ground);
    EXPECT_GE(rep.frobenius_error, previous_error - 1e-15);
    EXPECT_LE(rep.kept, previous_kept);
    EXPECT_NEAR(rep.frobenius_error, discarded_frobenius_norm(ints, thr), 1e-12);
    EXPECT_NEAR(rep.frobenius_error, reconstruction_error(ints, eigen_factorize(ints, thr)), 1e-10);
    previous_error = rep.frobenius_error;
    previous_kept = rep.kept;
  }
  EXPECT_LT(previous_kept, 16);
}

TEST(SpecialOrthogonalEigen, FixesDeterminant) {
  oracle::Rng rng(36);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXd a(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) a(i, j) = rng.normal();
    const Eigen::MatrixXd s = a + a.transpose();
    const auto eig = special_orthogonal_eigen(s);
    EXPECT_NEAR(eig.vectors.determinant(), 1.0, 1e-10);
    EXPECT_LT((eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose() - s).cwiseAbs().maxCoeff(), 1e-12);
    for (int i = 1; i < 5; ++i) EXPECT_LE(eig.values[i - 1], eig.values[i]);
  }
}

}  // namespace
}  // namespace brg
