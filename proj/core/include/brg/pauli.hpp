// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "brg/fermion.hpp"

namespace brg {

enum class Pauli : std::uint8_t { kI = 0, kX = 1, kY = 2, kZ = 3 };

char to_char(Pauli p);

inline constexpr int kMaxQubits = 64;

/// Pauli string on up to 64 qubits in symplectic form: qubit q carries
/// X if only x bit q is set, Z if only z bit q is set, Y if both.
class PauliString {
 public:
  PauliString() = default;
  PauliString(std::uint64_t x_mask, std::uint64_t z_mask) : x_(x_mask), z_(z_mask) {}
  PauliString(std::initializer_list<std::pair<int, Pauli>> axes);

  static PauliString z_string(std::uint64_t mask) { return {0, mask}; }

  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  std::uint64_t support() const noexcept { return x_ | z_; }
  int weight() const noexcept { return std::popcount(x_ | z_); }
  int y_count() const noexcept { return std::popcount(x_ & z_); }
  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  bool is_diagonal() const noexcept { return x_ == 0; }
  /// One past the highest qubit acted on.
  int extent() const noexcept { return support() == 0 ? 0 : 64 - std::countl_zero(support()); }

  Pauli at(int qubit) const;
  void set(int qubit, Pauli p);

  /// Label such as "X0 Y3 Z7"; empty for the identity.
  std::string label() const;
  static PauliString parse(std::string_view label);

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    return std::pair(a.x_, a.z_) <=> std::pair(b.x_, b.z_);
  }

 private:
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.x_mask() * 0x9E3779B97F4A7C15ULL ^ p.z_mask());
  }
};

/// a * b = phase * result, with phase in {1, i, -1, -i}.
std::pair<PauliString, std::complex<double>> pauli_product(const PauliString& a, const PauliString& b);

/// Phase exponent k (phase = i^k) of pauli_product, for exact bookkeeping.
int pauli_product_phase(const PauliString& a, const PauliString& b);

inline bool qubitwise_commute(const PauliString& a, const PauliString& b) {
  const std::uint64_t overlap = a.support() & b.support();
  return ((a.x_mask() ^ b.x_mask()) & overlap) == 0 && ((a.z_mask() ^ b.z_mask()) & overlap) == 0;
}

/// Real linear combination of Pauli strings plus an identity constant.
class QubitOperator {
 public:
  using TermMap = std::map<PauliString, double>;

  QubitOperator() = default;
  explicit QubitOperator(double constant) : constant_(constant) {}

  void add_term(const PauliString& p, double coefficient);
  double constant() const noexcept { return constant_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  double coefficient(const PauliString& p) const;

  int n_qubits() const;

  QubitOperator& operator+=(const QubitOperator& other);
  QubitOperator& operator*=(double scalar);
  friend QubitOperator operator+(QubitOperator a, const QubitOperator& b) { return a += b; }
  friend QubitOperator operator*(QubitOperator a, double s) { return a *= s; }
  void prune(double threshold = kPruneThreshold);

  /// Sum of |coefficient| over non-identity strings.
  double l1_norm() const;

  /// `coeff [X3 Y5 Z7]` lines, sorted by label; the identity line is `coeff []`.
  std::string to_text() const;
  static QubitOperator parse_text(std::string_view text);

 private:
  TermMap terms_;
  double constant_ = 0.0;
};

double max_difference(const QubitOperator& a, const QubitOperator& b);

/// Dense 2^n matrix; bit q of the basis index is qubit q, |1> = occupied.
Eigen::MatrixXcd dense_matrix(const PauliString& p, int n_qubits);
Eigen::MatrixXcd dense_matrix(const QubitOperator& op, int n_qubits);

/// out += coefficient * P psi for a real state; P must contain an even number of Y.
void apply_pauli_accumulate(const PauliString& p, double coefficient, const Eigen::VectorXd& psi, Eigen::VectorXd& out);

/// <psi|P|psi> for a real normalized state; zero for odd-Y strings.
double pauli_expectation(const PauliString& p, const Eigen::VectorXd& psi);

/// Jordan-Wigner image with n_p = (1 - Z_p)/2. Throws std::domain_error when a
/// coefficient comes out complex, i.e. the operator is not Hermitian.
QubitOperator jordan_wigner(const FermionOperator& op);

/// Same transform without the Hermiticity requirement; the identity key is always present.
std::map<PauliString, std::complex<double>> jordan_wigner_complex(const FermionOperator& op);

}  // namespace brg
