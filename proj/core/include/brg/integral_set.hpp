// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <vector>

namespace brg {

/// Dense rank-4 tensor with row-major (p, q, r, s) layout.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

  int dim() const noexcept { return dim_; }

  double& operator()(int p, int q, int r, int s) { return data_[index(p, q, r, s)]; }
  double operator()(int p, int q, int r, int s) const { return data_[index(p, q, r, s)]; }

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  /// Assign `value` to (pq|rs) and all seven images under real-orbital symmetry.
  void set_symmetric(int p, int q, int r, int s, double value);

  /// Largest deviation from the eight-fold symmetry.
  double symmetry_defect() const;

 private:
  std::size_t index(int p, int q, int r, int s) const {
    const auto n = static_cast<std::size_t>(dim_);
    return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
  }

  int dim_ = 0;
  std::vector<double> data_;
};

/// Molecular-orbital integrals in chemist notation plus the scalar core energy.
///
/// `h` holds the one-electron integrals, `v(p,q,r,s)` holds (pq|rs) and
/// `e_core` collects nuclear repulsion and any frozen-core contribution.
struct IntegralSet {
  int n_spatial = 0;
  double e_core = 0.0;
  Eigen::MatrixXd h;
  Tensor4 v;
  std::optional<Eigen::VectorXd> orbital_energies;

  static IntegralSet zeros(int n_spatial);

  /// Throws std::invalid_argument when h or v break their symmetries beyond `tol`.
  void validate(double tol = 1e-10) const;
};

/// Eight-fold symmetry completion: averages every orbit of (pq|rs).
/// Applying it twice gives the same tensor as applying it once.
Tensor4 symmetrize(const Tensor4& v);

/// Apply an orbital rotation C (columns = new orbitals in the old basis).
IntegralSet rotate_orbitals(const IntegralSet& ints, const Eigen::MatrixXd& c);

}  // namespace brg
