// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <array>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "brg/integral_set.hpp"

namespace brg {

struct Ladder {
  int mode = 0;
  bool dagger = false;

  auto operator<=>(const Ladder&) const = default;
};

using LadderSequence = std::vector<Ladder>;

inline Ladder create(int mode) { return {mode, true}; }
inline Ladder annihilate(int mode) { return {mode, false}; }

/// Coefficients below this magnitude are dropped after every algebraic pass.
inline constexpr double kPruneThreshold = 1e-12;

/// Real linear combination of products of fermionic ladder operators.
class FermionOperator {
 public:
  using TermMap = std::map<LadderSequence, double>;

  FermionOperator() = default;
  explicit FermionOperator(double constant) : constant_(constant) {}

  void add_term(LadderSequence ops, double coefficient);
  void add_constant(double value) { constant_ += value; }

  double constant() const noexcept { return constant_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty() && constant_ == 0.0; }

  /// One past the largest mode index referenced.
  int n_modes() const;

  FermionOperator& operator+=(const FermionOperator& other);
  FermionOperator& operator*=(double scalar);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) { return a += b; }
  friend FermionOperator operator*(FermionOperator a, double s) { return a *= s; }
  friend FermionOperator operator*(double s, FermionOperator a) { return a *= s; }
  /// Concatenating product (not normal-ordered).
  friend FermionOperator operator*(const FermionOperator& a, const FermionOperator& b);

  FermionOperator adjoint() const;
  void prune(double threshold = kPruneThreshold);

 private:
  TermMap terms_;
  double constant_ = 0.0;
};

/// Canonical form: creators left of annihilators, each block in descending mode
/// order, repeated modes removed, like terms merged. Operator equality is preserved.
FermionOperator normal_order(const FermionOperator& op);

/// Max |a_t - b_t| over the union of terms (both assumed normal-ordered), constants included.
double max_difference(const FermionOperator& a, const FermionOperator& b);

bool is_hermitian(const FermionOperator& op, double tol = 1e-12);

enum class SpinLayout {
  kBlock,        // spin-up on modes 0..M-1, spin-down on M..2M-1
  kInterleaved,  // mode 2p is up, 2p+1 is down
};

SpinLayout parse_spin_layout(std::string_view token);
std::string_view to_string(SpinLayout layout);

inline int spin_orbital(int p, int spin, int n_spatial, SpinLayout layout) {
  return layout == SpinLayout::kBlock ? p + spin * n_spatial : 2 * p + spin;
}

/// Second-quantized electronic Hamiltonian of an integral set, normal-ordered.
FermionOperator build_hamiltonian(const IntegralSet& integrals, SpinLayout layout = SpinLayout::kBlock);

/// The five term classes used for coefficient-norm bookkeeping:
/// I   a+_p a_p
/// II  a+_p a_q + h.c., p != q
/// III two distinct modes among the four indices (number-number)
/// IV  three distinct modes
/// V   four distinct modes
struct PartitionSums {
  std::array<double, 5> classes{};
  double total() const { return classes[0] + classes[1] + classes[2] + classes[3] + classes[4]; }
};

/// Class index 0..4 of a normal-ordered term; throws for constants, non-number-conserving
/// or beyond-two-body terms.
int partition_class(const LadderSequence& term);

/// Per-class sums of |coefficient|, counting each term/conjugate pair once.
PartitionSums classify_partitions(const FermionOperator& normal_ordered_op);

/// Split a normal-ordered operator into its five classes (constant dropped).
std::array<FermionOperator, 5> split_partitions(const FermionOperator& normal_ordered_op);

/// Dense matrix on the 2^n occupation basis, bit p of the index = occupation of mode p,
/// with a+_p carrying the sign (-1)^(number of occupied modes below p).
Eigen::MatrixXd fock_matrix(const FermionOperator& op, int n_modes);

/// Number operator and S_z (block or interleaved layout) as FermionOperators.
FermionOperator number_operator(int n_modes);
FermionOperator sz_operator(int n_spatial, SpinLayout layout = SpinLayout::kBlock);

}  // namespace brg
