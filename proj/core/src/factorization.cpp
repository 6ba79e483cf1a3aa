// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "brg/factorization.hpp"

namespace brg {

namespace {

constexpr double kZeroEigenvalue = 1e-12;

Eigen::MatrixXd supermatrix(const IntegralSet& ints) {
  const int m = ints.n_spatial;
  Eigen::MatrixXd s(m * m, m * m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int t = 0; t < m; ++t) s(p * m + q, r * m + t) = ints.v(p, q, r, t);
  return s;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_supermatrix(const IntegralSet& ints) {
  const double defect = ints.v.symmetry_defect();
  if (defect > 1e-10)
    throw std::invalid_argument("eigen_factorize: two-electron tensor breaks eight-fold symmetry by " +
                                std::to_string(defect));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(supermatrix(ints));
  if (es.info() != Eigen::Success) throw std::runtime_error("eigen_factorize: eigensolver failed");
  return es;
}

bool kept(double w, double threshold) { return std::abs(w) > std::max(threshold, kZeroEigenvalue); }

}  // namespace

std::vector<RankOneFragment> eigen_factorize(const IntegralSet& integrals, double threshold) {
  const int m = integrals.n_spatial;
  const auto es = solve_supermatrix(integrals);
  std::vector<RankOneFragment> out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double w = es.eigenvalues()[k];
    if (!kept(w, threshold)) continue;
    RankOneFragment f;
    f.w = w;
    f.v = Eigen::Map<const Eigen::MatrixXd>(es.eigenvectors().col(k).data(), m, m).transpose();
    // Eigenvectors of nonzero eigenvalues are symmetric in (p,q); remove roundoff.
    f.v = 0.5 * (f.v + f.v.transpose()).eval();
    out.push_back(std::move(f));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return std::abs(a.w) > std::abs(b.w); });
  return out;
}

double discarded_frobenius_norm(const IntegralSet& integrals, double threshold) {
  const auto es = solve_supermatrix(integrals);
  double sq = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double w = es.eigenvalues()[k];
    if (!kept(w, threshold)) sq += w * w;
  }
  return std::sqrt(sq);
}

SymmetricEigen special_orthogonal_eigen(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (symmetric + symmetric.transpose()));
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed on a one-body fragment");
  SymmetricEigen out{es.eigenvalues(), es.eigenvectors()};
  if (out.vectors.size() > 0 && out.vectors.determinant() < 0) out.vectors.col(0) *= -1.0;
  const double defect =
      (out.vectors.transpose() * out.vectors - Eigen::MatrixXd::Identity(out.vectors.rows(), out.vectors.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (out.vectors.size() > 0 && defect > 1e-10)
    throw std::runtime_error("eigenvector matrix is not orthogonal (defect " + std::to_string(defect) + ")");
  return out;
}

Eigen::MatrixXd chemist_one_body(const IntegralSet& integrals) {
  const int m = integrals.n_spatial;
  Eigen::MatrixXd t = integrals.h;
  for (int p = 0; p < m; ++p)
    for (int s = 0; s < m; ++s) {
      double sum = 0.0;
      for (int q = 0; q < m; ++q) sum += integrals.v(p, q, q, s);
      t(p, s) -= 0.5 * sum;
    }
  return 0.5 * (t + t.transpose());
}

FactorizedHamiltonian assemble(const IntegralSet& integrals, const std::vector<RankOneFragment>& fragments) {
  FactorizedHamiltonian out;
  out.n_spatial = integrals.n_spatial;
  out.constant = integrals.e_core;
  const auto one = special_orthogonal_eigen(chemist_one_body(integrals));
  out.one_body = {one.values, one.vectors};
  for (const auto& f : fragments) {
    const auto eig = special_orthogonal_eigen(f.v);
    TwoBodyFragment t;
    t.w = f.w;
    t.lambda = eig.values;
    t.u = eig.vectors;
    t.g = 0.5 * f.w * eig.values * eig.values.transpose();
    out.fragments.push_back(std::move(t));
  }
  return out;
}

namespace {

// sum_pq A_pq E_pq with E_pq = sum_sigma a+_{p sigma} a_{q sigma}.
FermionOperator excitation_sum(const Eigen::MatrixXd& a, SpinLayout layout) {
  const int m = static_cast<int>(a.rows());
  FermionOperator out;
  for (int sigma = 0; sigma < 2; ++sigma)
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q)
        out.add_term({create(spin_orbital(p, sigma, m, layout)), annihilate(spin_orbital(q, sigma, m, layout))}, a(p, q));
  return out;
}

}  // namespace

FermionOperator FactorizedHamiltonian::to_fermion_operator(SpinLayout layout) const {
  FermionOperator out(constant);
  const Eigen::MatrixXd& u0 = one_body.u;
  out += excitation_sum(u0 * one_body.g.asDiagonal() * u0.transpose(), layout);
  for (const auto& f : fragments) {
    // U n_p U^dagger = sum_ab U_ap U_bp E_ab.
    std::vector<FermionOperator> rotated;
    rotated.reserve(static_cast<std::size_t>(n_spatial));
    for (int p = 0; p < n_spatial; ++p) rotated.push_back(excitation_sum(f.u.col(p) * f.u.col(p).transpose(), layout));
    for (int p = 0; p < n_spatial; ++p)
      for (int q = 0; q < n_spatial; ++q) {
        if (f.g(p, q) == 0.0) continue;
        out += (rotated[static_cast<std::size_t>(p)] * rotated[static_cast<std::size_t>(q)]) * f.g(p, q);
      }
  }
  return normal_order(out);
}

IntegralSet FactorizedHamiltonian::to_integral_set() const {
  const int m = n_spatial;
  IntegralSet out = IntegralSet::zeros(m);
  out.e_core = constant;
  // 1/2 sum V'_pqrs E_pq E_rs with V'_pqrs = 2 sum_ab G_ab U_pa U_qa U_rb U_sb.
  Eigen::MatrixXd super = Eigen::MatrixXd::Zero(m * m, m * m);
  for (const auto& f : fragments) {
    Eigen::MatrixXd pair(m * m, m);  // column a holds vec(U_a U_a^T)
    for (int a = 0; a < m; ++a)
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) pair(p * m + q, a) = f.u(p, a) * f.u(q, a);
    super += 2.0 * pair * f.g * pair.transpose();
  }
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) out.v(p, q, r, s) = super(p * m + q, r * m + s);
  out.v = symmetrize(out.v);
  Eigen::MatrixXd t = one_body.u * one_body.g.asDiagonal() * one_body.u.transpose();
  for (int p = 0; p < m; ++p)
    for (int s = 0; s < m; ++s) {
      double sum = 0.0;
      for (int q = 0; q < m; ++q) sum += out.v(p, q, q, s);
      t(p, s) += 0.5 * sum;
    }
  out.h = 0.5 * (t + t.transpose());
  return out;
}

TruncationReport truncation_error(const IntegralSet& integrals, double threshold,
                                  const std::function<double(const FermionOperator&)>& ground_energy) {
  TruncationReport report;
  const auto fragments = eigen_factorize(integrals, threshold);
  report.kept = static_cast<int>(fragments.size());
  report.frobenius_error = discarded_frobenius_norm(integrals, threshold);
  if (ground_energy) {
    const double full = ground_energy(build_hamiltonian(integrals));
    const double truncated = ground_energy(build_hamiltonian(assemble(integrals, fragments).to_integral_set()));
    report.ground_energy_shift = truncated - full;
  }
  return report;
}

}  // namespace brg
