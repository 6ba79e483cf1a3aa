// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <stdexcept>
#include <unordered_map>

#include "brg/pauli.hpp"

namespace brg {

namespace {

using Complex = std::complex<double>;
using Expansion = std::vector<std::pair<PauliString, Complex>>;

// a+_p = Z_{<p} (X_p - iY_p)/2 and a_p = Z_{<p} (X_p + iY_p)/2.
Expansion ladder_image(const Ladder& l) {
  if (l.mode >= kMaxQubits) throw std::out_of_range("jordan_wigner: mode index beyond 64 qubits");
  const std::uint64_t below = (std::uint64_t{1} << l.mode) - 1;
  const std::uint64_t bit = std::uint64_t{1} << l.mode;
  const double y_sign = l.dagger ? -1.0 : 1.0;
  return {{PauliString(bit, below), Complex(0.5, 0.0)},
          {PauliString(bit, below | bit), Complex(0.0, 0.5 * y_sign)}};
}

}  // namespace

std::map<PauliString, std::complex<double>> jordan_wigner_complex(const FermionOperator& op) {
  std::unordered_map<PauliString, Complex, PauliStringHash> acc;
  acc[PauliString()] += op.constant();
  Expansion current;
  Expansion next;
  for (const auto& [ops, coef] : op.terms()) {
    current.assign(1, {PauliString(), Complex(coef, 0.0)});
    for (const auto& l : ops) {
      const Expansion image = ladder_image(l);
      next.clear();
      for (const auto& [pa, ca] : current)
        for (const auto& [pb, cb] : image) {
          auto [pr, phase] = pauli_product(pa, pb);
          next.emplace_back(pr, ca * cb * phase);
        }
      // Merge duplicates so long products stay compact.
      std::unordered_map<PauliString, Complex, PauliStringHash> merged;
      for (const auto& [p, c] : next) merged[p] += c;
      current.assign(merged.begin(), merged.end());
    }
    for (const auto& [p, c] : current) acc[p] += c;
  }
  std::map<PauliString, Complex> out;
  for (const auto& [p, c] : acc)
    if (std::abs(c) > kPruneThreshold || p.is_identity()) out.emplace(p, c);
  return out;
}

QubitOperator jordan_wigner(const FermionOperator& op) {
  const auto image = jordan_wigner_complex(op);
  const Complex constant = image.at(PauliString());
  if (std::abs(constant.imag()) > 1e-10) throw std::domain_error("jordan_wigner: non-Hermitian operator (complex constant)");
  QubitOperator out(constant.real());
  for (const auto& [p, c] : image) {
    if (p.is_identity()) continue;
    if (std::abs(c.imag()) > 1e-10)
      throw std::domain_error("jordan_wigner: operator has complex Pauli coefficients; it is not Hermitian");
    if (std::abs(c.real()) > kPruneThreshold) out.add_term(p, c.real());
  }
  return out;
}

}  // namespace brg
