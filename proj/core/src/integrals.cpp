// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "brg/integrals.hpp"

namespace brg {

double boys_f0(double t) {
  if (!(t >= 0.0)) throw std::domain_error("boys_f0: argument must be non-negative");
  if (t < 1e-2) {
    // sum_k (-t)^k / (k! (2k + 1)); eight terms reach 1e-20 at t = 1e-2.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 10; ++k) {
      term *= -t / k;
      sum += term / (2 * k + 1);
    }
    return sum;
  }
  const double st = std::sqrt(t);
  return 0.5 * std::sqrt(std::numbers::pi) * std::erf(st) / st;
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Primitive {
  double alpha;
  double weight;  // contraction coefficient times primitive normalization
  Eigen::Vector3d center;
};

std::vector<std::vector<Primitive>> expand(const std::vector<ContractedShell>& shells) {
  std::vector<std::vector<Primitive>> out;
  out.reserve(shells.size());
  for (const auto& sh : shells) {
    std::vector<Primitive> prims;
    for (std::size_t i = 0; i < sh.exponents.size(); ++i) {
      const double a = sh.exponents[i];
      prims.push_back({a, sh.coefficients[i] * std::pow(2.0 * a / kPi, 0.75), sh.center});
    }
    out.push_back(std::move(prims));
  }
  return out;
}

// Gaussian product of two s primitives: exponent, center, and exp(-mu R^2) prefactor.
struct PairData {
  double p;
  Eigen::Vector3d center;
  double k;  // exp(-mu |A-B|^2)
  double mu_r2;
};

PairData pair(const Primitive& a, const Primitive& b) {
  const double p = a.alpha + b.alpha;
  const double mu = a.alpha * b.alpha / p;
  const double r2 = (a.center - b.center).squaredNorm();
  return {p, (a.alpha * a.center + b.alpha * b.center) / p, std::exp(-mu * r2), mu * r2};
}

}  // namespace

AoIntegrals ao_integrals(const std::vector<ContractedShell>& shells, const std::vector<Atom>& nuclei) {
  const auto basis = expand(shells);
  const int n = static_cast<int>(basis.size());
  AoIntegrals out;
  out.overlap = Eigen::MatrixXd::Zero(n, n);
  out.kinetic = Eigen::MatrixXd::Zero(n, n);
  out.nuclear = Eigen::MatrixXd::Zero(n, n);
  out.eri = Tensor4(n);

  std::vector<std::pair<double, Eigen::Vector3d>> charges;
  for (const auto& atom : nuclei) {
    Geometry one;
    one.atoms = {atom};
    charges.emplace_back(static_cast<double>(one.n_electrons()), atom.position);
  }
  Geometry whole;
  whole.atoms = nuclei;
  out.nuclear_repulsion = whole.nuclear_repulsion();

  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      double t = 0.0;
      double v = 0.0;
      for (const auto& a : basis[i])
        for (const auto& b : basis[j]) {
          const PairData ab = pair(a, b);
          const double w = a.weight * b.weight;
          const double sab = std::pow(kPi / ab.p, 1.5) * ab.k;
          s += w * sab;
          const double mu = a.alpha * b.alpha / ab.p;
          t += w * mu * (3.0 - 2.0 * ab.mu_r2) * sab;
          for (const auto& [z, c] : charges)
            v -= w * z * (2.0 * kPi / ab.p) * ab.k * boys_f0(ab.p * (ab.center - c).squaredNorm());
        }
      out.overlap(i, j) = out.overlap(j, i) = s;
      out.kinetic(i, j) = out.kinetic(j, i) = t;
      out.nuclear(i, j) = out.nuclear(j, i) = v;
    }

  // Unique quartets i >= j, k >= l, ij >= kl; the rest follow from symmetry.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k <= i; ++k)
        for (int l = 0; l <= k; ++l) {
          if (i * (i + 1) / 2 + j < k * (k + 1) / 2 + l) continue;
          double value = 0.0;
          for (const auto& a : basis[i])
            for (const auto& b : basis[j]) {
              const PairData ab = pair(a, b);
              for (const auto& c : basis[k])
                for (const auto& d : basis[l]) {
                  const PairData cd = pair(c, d);
                  const double pq = ab.p * cd.p;
                  const double rho = pq / (ab.p + cd.p);
                  value += a.weight * b.weight * c.weight * d.weight * 2.0 * std::pow(kPi, 2.5) /
                           (pq * std::sqrt(ab.p + cd.p)) * ab.k * cd.k *
                           boys_f0(rho * (ab.center - cd.center).squaredNorm());
                }
            }
          out.eri.set_symmetric(i, j, k, l, value);
        }
  return out;
}

AoIntegrals ao_integrals(const Geometry& geometry, std::string_view basis_name) {
  std::vector<ContractedShell> shells;
  for (const auto& atom : geometry.atoms) {
    if (atom.symbol != "H" && atom.symbol != "h")
      throw std::invalid_argument("ao_integrals: built-in engine supports hydrogen only, got '" + atom.symbol +
                                  "'");
    if (!atom.position.allFinite()) throw std::invalid_argument("ao_integrals: non-finite atom position");
    auto s = BasisLibrary::bundled().shells(basis_name, atom.symbol, atom.position);
    shells.insert(shells.end(), s.begin(), s.end());
  }
  AoIntegrals ao = ao_integrals(shells, geometry.atoms);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ao.overlap, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < 1e-8)
    throw LinearDependenceError("ao_integrals: overlap matrix is numerically singular (smallest eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()) + ")");
  return ao;
}

}  // namespace brg
