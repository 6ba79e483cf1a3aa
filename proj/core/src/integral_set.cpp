// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include "brg/integral_set.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace brg {

namespace {

std::array<std::array<int, 4>, 8> orbit(int p, int q, int r, int s) {
  return {{{p, q, r, s}, {q, p, r, s}, {p, q, s, r}, {q, p, s, r},
           {r, s, p, q}, {s, r, p, q}, {r, s, q, p}, {s, r, q, p}}};
}

}  // namespace

void Tensor4::set_symmetric(int p, int q, int r, int s, double value) {
  for (const auto& idx : orbit(p, q, r, s)) (*this)(idx[0], idx[1], idx[2], idx[3]) = value;
}

double Tensor4::symmetry_defect() const {
  double worst = 0.0;
  for (int p = 0; p < dim_; ++p)
    for (int q = 0; q < dim_; ++q)
      for (int r = 0; r < dim_; ++r)
        for (int s = 0; s < dim_; ++s) {
          const double ref = (*this)(p, q, r, s);
          for (const auto& idx : orbit(p, q, r, s))
            worst = std::max(worst, std::abs(ref - (*this)(idx[0], idx[1], idx[2], idx[3])));
        }
  return worst;
}

Tensor4 symmetrize(const Tensor4& v) {
  Tensor4 out(v.dim());
  const int n = v.dim();
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double sum = 0.0;
          for (const auto& idx : orbit(p, q, r, s)) sum += v(idx[0], idx[1], idx[2], idx[3]);
          out(p, q, r, s) = sum / 8.0;
        }
  return out;
}

IntegralSet IntegralSet::zeros(int n_spatial) {
  IntegralSet out;
  out.n_spatial = n_spatial;
  out.h = Eigen::MatrixXd::Zero(n_spatial, n_spatial);
  out.v = Tensor4(n_spatial);
  return out;
}

void IntegralSet::validate(double tol) const {
  if (n_spatial < 1) throw std::invalid_argument("IntegralSet: n_spatial must be positive");
  if (h.rows() != n_spatial || h.cols() != n_spatial || v.dim() != n_spatial)
    throw std::invalid_argument("IntegralSet: dimension mismatch");
  if (!h.allFinite() || !std::all_of(v.data().begin(), v.data().end(),
                                     [](double x) { return std::isfinite(x); }))
    throw std::invalid_argument("IntegralSet: non-finite entries");
  const double h_defect = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (h_defect > tol)
    throw std::invalid_argument("IntegralSet: h not symmetric (defect " + std::to_string(h_defect) + ")");
  const double v_defect = v.symmetry_defect();
  if (v_defect > tol)
    throw std::invalid_argument("IntegralSet: V lacks eight-fold symmetry (defect " +
                                std::to_string(v_defect) + ")");
}

IntegralSet rotate_orbitals(const IntegralSet& ints, const Eigen::MatrixXd& c) {
  const int n = ints.n_spatial;
  if (c.rows() != n || c.cols() != n) throw std::invalid_argument("rotate_orbitals: dimension mismatch");
  IntegralSet out = IntegralSet::zeros(n);
  out.e_core = ints.e_core;
  out.h = c.transpose() * ints.h * c;

  // Four quarter transformations, one index at a time.
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd work(nn * nn * nn, nn);
  std::vector<double> a = ints.v.data();
  std::vector<double> b(a.size());
  for (int pass = 0; pass < 4; ++pass) {
    // a is laid out as (i, j, k, l); contract l and rotate the layout to (l', i, j, k).
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> in(
        a.data(), nn * nn * nn, nn);
    work.noalias() = in * c;
    for (Eigen::Index ijk = 0; ijk < nn * nn * nn; ++ijk)
      for (Eigen::Index l = 0; l < nn; ++l) b[static_cast<std::size_t>(l * nn * nn * nn + ijk)] = work(ijk, l);
    std::swap(a, b);
  }
  out.v.data() = std::move(a);
  if (ints.orbital_energies && c.isApprox(Eigen::MatrixXd::Identity(n, n))) out.orbital_energies = ints.orbital_energies;
  return out;
}

}  // namespace brg
