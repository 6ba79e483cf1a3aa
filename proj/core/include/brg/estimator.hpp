// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <vector>

#include "brg/fermion.hpp"
#include "brg/grouping.hpp"
#include "brg/pauli.hpp"
#include "brg/sector.hpp"

namespace brg {

/// Default target standard error on the energy, in hartree.
inline constexpr double kDefaultEpsilon = 5e-4;

struct GroupStatistics {
  double mean = 0.0;      // E_h
  double variance = 0.0;  // E_h^2, of the whole grouped observable
  double fraction = 0.0;
};

/// Exact mean and variance of every group on `state`. Givens groups are evaluated on the
/// rotated sector state; Pauli groups on the dense 2^N amplitude vector.
std::vector<GroupStatistics> group_statistics(const MeasurementPlan& plan, const SectorState& state);

/// Sum of group means plus the plan constant.
double plan_energy(const MeasurementPlan& plan, const std::vector<GroupStatistics>& stats);

class ZeroVarianceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// f_g proportional to w_g sigma_g; empty `weights` means all ones.
std::vector<double> allocate(const std::vector<GroupStatistics>& stats, const std::vector<double>& weights = {});

/// M = sum_g w_g^2 sigma_g^2 / (f_g eps^2). Throws when a group with variance gets no shots.
double total_measurements(const std::vector<GroupStatistics>& stats, const std::vector<double>& fractions,
                          double epsilon, const std::vector<double>& weights = {});

/// (sum_g sigma_g)^2, the epsilon^2-scaled cost under optimal allocation.
double optimal_variance_sum(const std::vector<GroupStatistics>& stats);

struct L1Bounds {
  double qubit = 0.0;         // (sum |omega|)^2
  double fermi_naive = 0.0;   // (sum of all class sums)^2
  double fermi_tight = 0.0;   // (I/2 + II + III/2 + IV + V)^2
};

L1Bounds l1_bounds(const FermionOperator& h_fermionic, const QubitOperator& h_qubit);

struct WeckerApproximations {
  double fva = 0.0;  // fermionic bound without classes I and III
  double qva = 0.0;  // qubit bound of the same reduced operator
};

WeckerApproximations wecker_approximations(const FermionOperator& h_fermionic);

/// Class sums of the Jordan-Wigner image of each fermionic class.
std::array<double, 5> qubit_partition_norms(const FermionOperator& h_fermionic);

struct PowerLawFit {
  double log_a = 0.0;
  double b = 0.0;
};

/// Least squares on log M = log a + b log N; needs at least three positive points.
PowerLawFit powerlaw_fit(const std::vector<std::pair<double, double>>& points);

enum class AllocationSource { kCisd, kFci, kUniform };
std::string_view to_string(AllocationSource a);
AllocationSource parse_allocation(std::string_view token);

/// One costed strategy on one system.
struct CostRow {
  std::string system;
  int n_qubits = 0;
  std::string strategy;
  std::string allocation;
  double epsilon = kDefaultEpsilon;
  double fci_energy = 0.0;
  double hf_energy = 0.0;
  int n_groups = 0;
  double variance_fci = 0.0;   // (sum sigma)^2 on FCI with FCI-optimal fractions
  double variance_hf = 0.0;    // same on the Hartree-Fock determinant
  double m_total = 0.0;        // shots with the requested allocation
  double m_optimal = 0.0;      // shots with FCI-optimal fractions
  double penalty_ratio = 1.0;  // m_total / m_optimal
  L1Bounds bounds;
  WeckerApproximations wecker;
};

std::string cost_csv_header();
std::string cost_csv_row(const CostRow& row);

}  // namespace brg
