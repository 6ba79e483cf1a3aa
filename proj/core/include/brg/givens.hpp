// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace brg {

/// Planar rotation on adjacent modes (wire, wire+1): a+_wire -> c a+_wire + s a+_{wire+1},
/// a+_{wire+1} -> -s a+_wire + c a+_{wire+1}.
struct GivensRotation {
  int wire = 0;
  double theta = 0.0;
};

/// Rotations in application order. Applying them in sequence to a state implements the
/// orbital rotation a+_p -> sum_q U_qp a+_q where U = matrix().
struct GivensNetwork {
  int n_modes = 0;
  std::vector<GivensRotation> rotations;
  std::vector<std::vector<int>> layers;  // indices into `rotations`, members pairwise disjoint

  int depth() const { return static_cast<int>(layers.size()); }
  Eigen::MatrixXd matrix() const;
  GivensNetwork inverse() const;
};

/// M x M matrix of one rotation.
Eigen::MatrixXd givens_matrix(int n_modes, const GivensRotation& g);

/// ASAP layering; rotations sharing a wire keep their relative order.
std::vector<std::vector<int>> schedule_layers(int n_modes, const std::vector<GivensRotation>& rotations);

/// Alternating-diagonal elimination of a real orthogonal matrix with det +1.
/// Throws std::invalid_argument for non-orthogonal input or det -1.
GivensNetwork decompose(const Eigen::MatrixXd& u);

struct SpinCircuitMetrics {
  int two_qubit_gates = 0;
  int depth = 0;
};

/// Same network on both spin blocks; the two copies act on disjoint wires and run in parallel.
SpinCircuitMetrics spin_duplicate(const GivensNetwork& network);

/// Apply to a 2^N statevector (N = 2M, block layout, bit q = qubit q); `dagger` applies the inverse.
void apply_to_statevector(const GivensNetwork& network, Eigen::VectorXcd& state, bool dagger);
void apply_to_statevector(const GivensNetwork& network, Eigen::VectorXd& state, bool dagger);

/// Number-conserving two-qubit gate on (q, q+1) acting on a 2^N real or complex state.
void apply_givens_gate(Eigen::VectorXd& state, int q, double theta);
void apply_givens_gate(Eigen::VectorXcd& state, int q, double theta);

/// `givens <i> <i+1> <theta>` lines, layers separated by blank lines.
std::string export_circuit(const GivensNetwork& network);

}  // namespace brg

namespace brg {

/// Haar-like random matrix in SO(m): QR of a seeded Gaussian matrix with the sign and
/// determinant gauge fixed.
Eigen::MatrixXd random_special_orthogonal(int m, std::uint64_t seed);

}  // namespace brg
