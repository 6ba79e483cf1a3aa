// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brg/estimator.hpp"
#include "brg/factorization.hpp"
#include "brg/fermion.hpp"
#include "brg/grouping.hpp"
#include "brg/integral_set.hpp"
#include "brg/integrals.hpp"
#include "brg/noisysim.hpp"
#include "brg/pauli.hpp"
#include "brg/sector.hpp"

namespace brg {

/// Integrals plus electron counts, before any state is solved.
struct SystemInput {
  std::string name;
  IntegralSet integrals;
  int n_up = 0;
  int n_down = 0;
  std::optional<double> scf_energy;
};

/// RHF on a closed-shell geometry.
SystemInput geometry_input(const Geometry& geometry, const std::string& basis, std::string name);

/// RHF hydrogen chain; `basis` is STO-3G or 6-31G (case-insensitive).
SystemInput hydrogen_chain_input(int n_atoms, double spacing_angstrom, const std::string& basis);

/// Integrals from an FCIDUMP file; electron counts from NELEC and MS2.
SystemInput fcidump_input(const std::string& path);

/// Freeze the listed orbitals (doubly occupied) and shrink the electron counts.
SystemInput with_frozen_core(const SystemInput& input, const std::vector<int>& frozen);

/// A system with its Hamiltonians and reference states.
struct PreparedSystem {
  std::string name;
  IntegralSet integrals;
  int n_up = 0;
  int n_down = 0;
  FermionOperator fermionic;
  QubitOperator qubit;
  GroundState fci;
  GroundState cisd;
  SectorState hartree_fock;
  double hf_energy = 0.0;
  L1Bounds bounds;
  WeckerApproximations wecker;

  int n_spatial() const { return integrals.n_spatial; }
  int n_qubits() const { return 2 * integrals.n_spatial; }
};

PreparedSystem prepare_system(const SystemInput& input, const EigenOptions& options = {});

MeasurementPlan build_plan(const PreparedSystem& system, Strategy strategy, std::uint64_t seed = 0);

CostRow cost_strategy(const PreparedSystem& system, const MeasurementPlan& plan, AllocationSource allocation,
                      double epsilon = kDefaultEpsilon);

struct NoisePoint {
  double p_depol = 0.0;
  double p_readout = 0.0;
};

struct NoiseGrid {
  std::vector<double> p_depol;
  std::vector<double> p_readout;

  static NoiseGrid defaults();
  /// Two lines of comma- or space-separated values: `p_depol ...` and `p_readout ...`.
  static NoiseGrid parse(std::string_view text);
};

struct NoiseRow {
  double p_depol = 0.0;
  double p_readout = 0.0;
  std::string strategy;    // pauli | brg
  std::string mitigation;  // none | parity | postselect
  double abs_error_mha = 0.0;
  double retained_fraction = 1.0;
};

struct NoiseOptions {
  GateChannel channel = GateChannel::kDepolarizing;
  int identity_networks = 0;  // 0: exact state; m >= 2: m random networks composing to identity
  std::uint64_t seed = 0;
};

/// Four variants per grid point: Pauli grouping +/- parity projection and basis rotation
/// grouping +/- postselection, each compared to the FCI energy.
std::vector<NoiseRow> noise_sweep(const PreparedSystem& system, const NoiseGrid& grid, const NoiseOptions& options = {});

std::string noise_csv_header();
std::string noise_csv_row(const NoiseRow& row);

}  // namespace brg
