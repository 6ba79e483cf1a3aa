// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "brg/integral_set.hpp"

namespace brg {

inline constexpr double kBohrPerAngstrom = 1.8897259886;

struct Atom {
  std::string symbol;
  Eigen::Vector3d position;  // bohr
};

struct Geometry {
  std::vector<Atom> atoms;
  int charge = 0;
  int multiplicity = 1;

  int n_electrons() const;
  double nuclear_repulsion() const;
};

/// Linear chain of `n` hydrogens along z with uniform spacing given in angstrom.
Geometry hydrogen_chain(int n, double spacing_angstrom);

/// XYZ-style text: a header line `<charge> <multiplicity>` followed by
/// `<element> <x> <y> <z>` rows in angstrom. Blank lines and `#` comments are skipped.
Geometry parse_xyz(std::string_view text);

/// Contracted s shell. Coefficients multiply unit-normalized primitives and are
/// rescaled on construction so that the contracted function has unit norm.
struct ContractedShell {
  Eigen::Vector3d center;
  std::vector<double> exponents;
  std::vector<double> coefficients;

  ContractedShell(Eigen::Vector3d center, std::vector<double> exponents, std::vector<double> coefficients);

  double self_overlap() const;
};

/// Basis tables read from the plain-text format of core/data/hydrogen_basis.txt.
class BasisLibrary {
 public:
  struct ShellData {
    std::vector<double> exponents;
    std::vector<double> coefficients;
  };

  static BasisLibrary parse(std::string_view text);
  static const BasisLibrary& bundled();

  /// Shells for `symbol` in `basis_name` (case-insensitive), centered at `center`.
  std::vector<ContractedShell> shells(std::string_view basis_name, std::string_view symbol,
                                      const Eigen::Vector3d& center) const;
  std::vector<std::string> basis_names() const;

 private:
  // basis name (upper case) -> element symbol -> shells
  std::map<std::string, std::map<std::string, std::vector<ShellData>>> tables_;
};

class LinearDependenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ScfConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// F0(t) = integral of exp(-t u^2) over u in [0, 1].
double boys_f0(double t);

struct AoIntegrals {
  Eigen::MatrixXd overlap;
  Eigen::MatrixXd kinetic;
  Eigen::MatrixXd nuclear;
  Tensor4 eri;  // chemist (mu nu|lambda sigma)
  double nuclear_repulsion = 0.0;

  int n_basis() const { return static_cast<int>(overlap.rows()); }
  Eigen::MatrixXd core_hamiltonian() const { return kinetic + nuclear; }
};

AoIntegrals ao_integrals(const std::vector<ContractedShell>& shells, const std::vector<Atom>& nuclei);
AoIntegrals ao_integrals(const Geometry& geometry, std::string_view basis_name);

struct ScfOptions {
  int max_iter = 200;
  double conv = 1e-10;  // RMS change of the density matrix
  double damping = 0.0;
};

struct ScfResult {
  Eigen::MatrixXd mo_coefficients;
  Eigen::VectorXd orbital_energies;
  double energy = 0.0;  // includes nuclear repulsion
  int iterations = 0;
  std::vector<double> energy_history;
};

/// Closed-shell Roothaan iteration with Loewdin orthogonalization and a core guess.
ScfResult run_rhf(const AoIntegrals& ao, int n_electrons, const ScfOptions& options = {});

IntegralSet to_mo_integrals(const AoIntegrals& ao, const Eigen::MatrixXd& mo_coefficients, double e_nuc);

/// Fold doubly occupied `frozen` orbitals into the core energy and one-body term.
IntegralSet freeze_core(const IntegralSet& integrals, std::span<const int> frozen);

/// Convenience: geometry -> AO integrals -> RHF -> MO integrals.
struct MolecularSystem {
  IntegralSet integrals;
  ScfResult scf;
  int n_electrons = 0;
};
MolecularSystem build_molecular_system(const Geometry& geometry, std::string_view basis_name,
                                       const ScfOptions& options = {});

}  // namespace brg
