// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brg/factorization.hpp"
#include "brg/givens.hpp"
#include "brg/pauli.hpp"

namespace brg {

/// Product of Z on the qubits of `mask`, times a coefficient.
struct ZMonomial {
  std::uint64_t mask = 0;
  double coefficient = 0.0;
};

enum class BasisChange {
  kNone,         // measure in the computational basis
  kSingleQubit,  // per-qubit X/Y -> Z rotations given by `axes`
  kGivens,       // inverse Givens network on both spin blocks
};

std::string_view to_string(BasisChange b);

struct MeasurementGroup {
  std::string label;
  BasisChange basis_change = BasisChange::kNone;
  PauliString axes;        // kSingleQubit: axis measured on each qubit
  GivensNetwork network;   // kGivens
  std::vector<ZMonomial> observable;  // diagonal after the basis change
  std::vector<std::pair<PauliString, double>> pauli_terms;  // source strings for Pauli groups
};

enum class Strategy { kSeparate, kPauliGrouping, kBasisRotation };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view token);

struct MeasurementPlan {
  Strategy strategy = Strategy::kSeparate;
  int n_qubits = 0;
  std::vector<MeasurementGroup> groups;
  std::vector<double> fractions;  // uniform until an allocation is assigned
  double total_constant = 0.0;
};

bool is_compatible(const PauliString& a, const PauliString& b);

MeasurementPlan plan_separate(const QubitOperator& h);
MeasurementPlan plan_pauli_word_greedy(const QubitOperator& h, std::uint64_t seed = 0);
MeasurementPlan plan_basis_rotation(const FactorizedHamiltonian& f);

/// Diagonal observable value on a computational basis state.
double diagonal_value(const std::vector<ZMonomial>& observable, std::uint64_t bits);

}  // namespace brg
