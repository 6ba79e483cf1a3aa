// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "brg/givens.hpp"
#include "brg/grouping.hpp"
#include "brg/pauli.hpp"
#include "brg/sector.hpp"

namespace brg {

enum class GateChannel { kDepolarizing, kDephasing };

std::string_view to_string(GateChannel c);
GateChannel parse_gate_channel(std::string_view token);

/// Gate noise acts on both qubits after every two-qubit gate; readout flips each bit
/// independently at measurement.
struct NoiseModel {
  double p_depol = 0.0;
  double p_readout = 0.0;
  GateChannel channel = GateChannel::kDepolarizing;

  void validate() const;
};

/// Mixed state on N qubits (bit q of the index = qubit q).
class DensityMatrix {
 public:
  static constexpr int kMaxQubits = 12;

  explicit DensityMatrix(int n_qubits);
  static DensityMatrix pure(const Eigen::VectorXcd& psi);
  static DensityMatrix pure(const Eigen::VectorXd& psi);

  int n_qubits() const noexcept { return n_qubits_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return rho_; }
  Eigen::MatrixXcd& matrix() noexcept { return rho_; }

  double trace() const { return rho_.trace().real(); }
  double hermiticity_defect() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }
  double min_eigenvalue() const;

  void apply_givens(int q, double theta);
  void apply_single_qubit(int q, const Eigen::Matrix2cd& u);
  void depolarize(int q, double p);
  void dephase(int q, double p);
  void gate_noise(int q, const NoiseModel& noise);

  /// Diagonal of rho as probabilities.
  std::vector<double> populations() const;

 private:
  int n_qubits_;
  Eigen::MatrixXcd rho_;
};

/// Accept only bitstrings with the target spin-up and spin-down counts (block layout).
struct PostselectionFilter {
  int n_spatial = 0;
  int n_up = 0;
  int n_down = 0;

  bool accepts(std::uint64_t bits) const;
};

/// Symmetric bit flips with probability p on every qubit, applied to a distribution.
void apply_readout_noise(std::vector<double>& distribution, int n_qubits, double p);

/// Apply a network to both spin blocks with gate noise after each two-qubit gate.
void apply_network_noisy(DensityMatrix& rho, const GivensNetwork& network, bool dagger, const NoiseModel& noise);

/// Outcome distribution of one group: basis change (noisy Givens gates or noiseless
/// single-qubit rotations), then analytic readout noise.
std::vector<double> run_group(const DensityMatrix& rho, const MeasurementGroup& group, const NoiseModel& noise);

struct NoisyEstimate {
  double energy = 0.0;
  double retained_fraction = 1.0;
};

/// Energy from the per-group outcome distributions; with a filter, outcomes outside the
/// target sector are discarded and the rest renormalized.
NoisyEstimate estimate_energy(const MeasurementPlan& plan, const DensityMatrix& rho, const NoiseModel& noise,
                              const std::optional<PostselectionFilter>& filter = std::nullopt);

/// Tr(rho Q) for a Pauli string.
std::complex<double> pauli_expectation(const PauliString& p, const DensityMatrix& rho);

/// Pauli-term estimate under readout noise: each <P> is damped by (1 - 2p)^weight(P).
double pauli_energy(const QubitOperator& h, const DensityMatrix& rho, double p_readout);

/// Tr(P rho H) / Tr(P rho) with P = P_up P_down, P_s = (1 + (-1)^{n_s} prod_{q in s} Z_q)/2.
/// Every Pauli expectation in the expansion is damped by (1 - 2 p_readout)^weight.
/// Throws std::domain_error when Tr(P rho) < 1e-12.
NoisyEstimate parity_projected_energy(const QubitOperator& h, const DensityMatrix& rho, const PostselectionFilter& target,
                                      double p_readout = 0.0);

/// m networks whose product is the identity: m-1 seeded random rotations and the inverse
/// of their product.
std::vector<GivensNetwork> random_identity_prep(int m_networks, int n_spatial, std::uint64_t seed);

struct TrajectoryRecord {
  std::vector<std::vector<std::uint64_t>> samples;  // per group, one bitstring per shot
};

/// Pure-state trajectories: gate noise becomes random Pauli insertions, readout becomes
/// random bit flips. Stream for (group g, shot s) is derived from (seed, g, s).
TrajectoryRecord sample_trajectories(const MeasurementPlan& plan, const Eigen::VectorXcd& psi, const NoiseModel& noise,
                                     std::size_t shots, std::uint64_t seed);

}  // namespace brg
