// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "brg/integrals.hpp"

namespace brg {

namespace {

Eigen::MatrixXd two_electron_fock(const Tensor4& eri, const Eigen::MatrixXd& density) {
  const int n = eri.dim();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m < n; ++m)
    for (int v = 0; v < n; ++v) {
      double acc = 0.0;
      for (int l = 0; l < n; ++l)
        for (int s = 0; s < n; ++s) acc += density(l, s) * (eri(m, v, l, s) - 0.5 * eri(m, l, v, s));
      g(m, v) = acc;
    }
  return g;
}

}  // namespace

ScfResult run_rhf(const AoIntegrals& ao, int n_electrons, const ScfOptions& options) {
  const int n = ao.n_basis();
  if (n_electrons < 0 || n_electrons % 2 != 0)
    throw std::invalid_argument("run_rhf: closed-shell reference needs an even electron count");
  const int n_occ = n_electrons / 2;
  if (n_occ > n) throw std::invalid_argument("run_rhf: more occupied orbitals than basis functions");
  if (options.damping < 0.0 || options.damping >= 1.0)
    throw std::invalid_argument("run_rhf: damping must lie in [0, 1)");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s_eig(ao.overlap);
  if (s_eig.eigenvalues().minCoeff() < 1e-8) throw LinearDependenceError("run_rhf: overlap is singular");
  const Eigen::MatrixXd x =
      s_eig.eigenvectors() * s_eig.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
      s_eig.eigenvectors().transpose();

  const Eigen::MatrixXd hcore = ao.core_hamiltonian();
  auto diagonalize = [&](const Eigen::MatrixXd& fock, Eigen::MatrixXd& c, Eigen::VectorXd& eps) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x.transpose() * fock * x);
    c = x * es.eigenvectors();
    eps = es.eigenvalues();
  };
  auto density_of = [&](const Eigen::MatrixXd& c) {
    const Eigen::MatrixXd occ = c.leftCols(n_occ);
    return Eigen::MatrixXd(2.0 * occ * occ.transpose());
  };

  ScfResult result;
  Eigen::MatrixXd c;
  Eigen::VectorXd eps;
  diagonalize(hcore, c, eps);
  Eigen::MatrixXd density = density_of(c);

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    const Eigen::MatrixXd fock = hcore + two_electron_fock(ao.eri, density);
    const double energy = 0.5 * (density.cwiseProduct(hcore + fock)).sum() + ao.nuclear_repulsion;
    result.energy_history.push_back(energy);

    diagonalize(fock, c, eps);
    Eigen::MatrixXd next = density_of(c);
    if (options.damping > 0.0) next = (1.0 - options.damping) * next + options.damping * density;
    const double rms = std::sqrt((next - density).squaredNorm() / static_cast<double>(n * n));
    density = next;

    if (rms < options.conv) {
      const Eigen::MatrixXd final_fock = hcore + two_electron_fock(ao.eri, density);
      diagonalize(final_fock, c, eps);
      result.energy = 0.5 * (density.cwiseProduct(hcore + final_fock)).sum() + ao.nuclear_repulsion;
      result.energy_history.push_back(result.energy);
      result.mo_coefficients = c;
      result.orbital_energies = eps;
      result.iterations = iter;
      return result;
    }
  }
  throw ScfConvergenceError("run_rhf: no convergence after " + std::to_string(options.max_iter) + " iterations");
}

IntegralSet to_mo_integrals(const AoIntegrals& ao, const Eigen::MatrixXd& mo_coefficients, double e_nuc) {
  const int n = ao.n_basis();
  if (mo_coefficients.rows() != n || mo_coefficients.cols() != n)
    throw std::invalid_argument("to_mo_integrals: coefficient matrix must be " + std::to_string(n) + "x" +
                                std::to_string(n));
  IntegralSet ao_set = IntegralSet::zeros(n);
  ao_set.h = ao.core_hamiltonian();
  ao_set.v = ao.eri;
  ao_set.e_core = e_nuc;
  IntegralSet mo = rotate_orbitals(ao_set, mo_coefficients);
  // Remove round-off asymmetry so downstream symmetry checks see exact symmetry.
  mo.h = 0.5 * (mo.h + mo.h.transpose()).eval();
  mo.v = symmetrize(mo.v);
  return mo;
}

IntegralSet freeze_core(const IntegralSet& ints, std::span<const int> frozen) {
  const int n = ints.n_spatial;
  std::set<int> fz;
  for (int i : frozen) {
    if (i < 0 || i >= n) throw std::invalid_argument("freeze_core: orbital index " + std::to_string(i) + " out of range");
    if (!fz.insert(i).second) throw std::invalid_argument("freeze_core: duplicated orbital index " + std::to_string(i));
  }
  if (fz.empty()) return ints;
  std::vector<int> active;
  for (int p = 0; p < n; ++p)
    if (!fz.contains(p)) active.push_back(p);
  if (active.empty()) throw std::invalid_argument("freeze_core: no active orbitals remain");

  const int na = static_cast<int>(active.size());
  IntegralSet out = IntegralSet::zeros(na);
  out.e_core = ints.e_core;
  for (int i : fz) {
    out.e_core += 2.0 * ints.h(i, i);
    for (int j : fz) out.e_core += 2.0 * ints.v(i, i, j, j) - ints.v(i, j, j, i);
  }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      const int p = active[a];
      const int q = active[b];
      double value = ints.h(p, q);
      for (int i : fz) value += 2.0 * ints.v(p, q, i, i) - ints.v(p, i, i, q);
      out.h(a, b) = value;
    }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b)
      for (int c = 0; c < na; ++c)
        for (int d = 0; d < na; ++d) out.v(a, b, c, d) = ints.v(active[a], active[b], active[c], active[d]);
  if (ints.orbital_energies) {
    Eigen::VectorXd e(na);
    for (int a = 0; a < na; ++a) e(a) = (*ints.orbital_energies)(active[a]);
    out.orbital_energies = e;
  }
  return out;
}

MolecularSystem build_molecular_system(const Geometry& geometry, std::string_view basis_name,
                                       const ScfOptions& options) {
  const AoIntegrals ao = ao_integrals(geometry, basis_name);
  MolecularSystem sys;
  sys.n_electrons = geometry.n_electrons();
  sys.scf = run_rhf(ao, sys.n_electrons, options);
  sys.integrals = to_mo_integrals(ao, sys.scf.mo_coefficients, ao.nuclear_repulsion);
  sys.integrals.orbital_energies = sys.scf.orbital_energies;
  return sys;
}

}  // namespace brg
