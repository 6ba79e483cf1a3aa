// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "brg/fermion.hpp"
#include "brg/givens.hpp"

namespace brg {

/// All M-bit strings with a fixed popcount, in ascending numeric order.
class StringSpace {
 public:
  StringSpace() = default;
  StringSpace(int n_orbitals, int n_particles);

  int n_orbitals() const noexcept { return n_orbitals_; }
  int n_particles() const noexcept { return n_particles_; }
  std::size_t size() const noexcept { return strings_.size(); }
  std::uint64_t operator[](std::size_t i) const { return strings_[i]; }
  const std::vector<std::uint64_t>& strings() const noexcept { return strings_; }

  /// Position of a string with the right popcount (combinatorial rank).
  std::size_t index(std::uint64_t s) const;

 private:
  int n_orbitals_ = 0;
  int n_particles_ = 0;
  std::vector<std::uint64_t> strings_;
  std::vector<std::vector<std::size_t>> binom_;  // binom_[n][k]
};

/// Determinants of the (n_up, n_down) sector in block layout: determinant (i, j) has
/// spin-up string up[i] on qubits 0..M-1 and spin-down string down[j] on qubits M..2M-1.
/// Flat index is i * dim_down + j.
class SectorBasis {
 public:
  SectorBasis() = default;
  SectorBasis(int n_spatial, int n_up, int n_down);

  int n_spatial() const noexcept { return up_.n_orbitals(); }
  int n_up() const noexcept { return up_.n_particles(); }
  int n_down() const noexcept { return down_.n_particles(); }
  const StringSpace& up() const noexcept { return up_; }
  const StringSpace& down() const noexcept { return down_; }
  std::size_t dimension() const noexcept { return up_.size() * down_.size(); }

  /// Full 2M-bit occupation pattern of a flat index.
  std::uint64_t bitstring(std::size_t flat) const;
  /// Flat index of a bitstring in this sector; throws std::out_of_range otherwise.
  std::size_t index(std::uint64_t bits) const;

 private:
  StringSpace up_;
  StringSpace down_;
};

class SectorTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest sector dimension accepted by the solvers.
inline constexpr std::size_t kDefaultSectorLimit = 5'000'000;

/// Sparse Hamiltonian restricted to a sector. Requires a number- and S_z-conserving
/// normal-ordered operator of at most two-body rank in block layout.
Eigen::SparseMatrix<double, Eigen::RowMajor> sector_hamiltonian(const FermionOperator& h, const SectorBasis& basis,
                                                                 std::size_t limit = kDefaultSectorLimit);

/// Normalized amplitudes over a SectorBasis.
struct SectorState {
  SectorBasis basis;
  Eigen::VectorXd amplitudes;

  double amplitude(std::size_t up_index, std::size_t down_index) const {
    return amplitudes[static_cast<Eigen::Index>(up_index * basis.down().size() + down_index)];
  }
  /// Dense 2^(2M) vector (bit q = qubit q).
  Eigen::VectorXd to_dense() const;
};

struct EigenOptions {
  std::size_t dense_limit = 2000;
  int max_iterations = 400;
  double residual_tol = 1e-9;
  std::uint64_t seed = 0;
};

struct EigenPair {
  double energy = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;
};

/// Lowest eigenpair: dense solve up to `dense_limit`, Lanczos with full reorthogonalization above.
EigenPair lowest_eigenpair(const Eigen::SparseMatrix<double, Eigen::RowMajor>& h, const EigenOptions& options = {});

struct GroundState {
  double energy = 0.0;
  SectorState state;
  double residual = 0.0;
};

GroundState fci_ground_state(const FermionOperator& h, int n_spatial, int n_up, int n_down,
                             const EigenOptions& options = {});

/// Lowest eigenvector within the reference and its single and double excitations,
/// embedded in the full sector.
GroundState cisd_state(const FermionOperator& h, int n_spatial, std::uint64_t reference_bits, int n_up, int n_down,
                       const EigenOptions& options = {});

/// Lowest-orbital determinant (aufbau) for the given sector.
std::uint64_t aufbau_bits(int n_spatial, int n_up, int n_down);
SectorState determinant_state(int n_spatial, std::uint64_t bits);

double expectation(const Eigen::SparseMatrix<double, Eigen::RowMajor>& h, const Eigen::VectorXd& v);

/// Apply a Givens network to both spin blocks of a sector state (dagger = inverse).
void apply_network(const GivensNetwork& network, SectorState& state, bool dagger);

}  // namespace brg
