// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <bit>
#include <map>
#include <stdexcept>
#include <string>

#include "brg/grouping.hpp"
#include "brg/random.hpp"

namespace brg {

std::string_view to_string(BasisChange b) {
  switch (b) {
    case BasisChange::kNone: return "none";
    case BasisChange::kSingleQubit: return "single-qubit";
    case BasisChange::kGivens: return "givens";
  }
  return "?";
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kSeparate: return "separate";
    case Strategy::kPauliGrouping: return "pauli";
    case Strategy::kBasisRotation: return "brg";
  }
  return "?";
}

Strategy parse_strategy(std::string_view token) {
  if (token == "separate") return Strategy::kSeparate;
  if (token == "pauli") return Strategy::kPauliGrouping;
  if (token == "brg") return Strategy::kBasisRotation;
  throw std::invalid_argument("unknown strategy '" + std::string(token) + "' (expected separate, pauli or brg)");
}

bool is_compatible(const PauliString& a, const PauliString& b) { return qubitwise_commute(a, b); }

double diagonal_value(const std::vector<ZMonomial>& observable, std::uint64_t bits) {
  double sum = 0.0;
  for (const auto& z : observable) sum += (std::popcount(bits & z.mask) & 1) ? -z.coefficient : z.coefficient;
  return sum;
}

namespace {

MeasurementGroup pauli_group(std::string label, const std::vector<std::pair<PauliString, double>>& terms) {
  MeasurementGroup g;
  g.label = std::move(label);
  std::uint64_t x = 0, z = 0;
  for (const auto& [p, c] : terms) {
    x |= p.x_mask();
    z |= p.z_mask();
    g.observable.push_back({p.support(), c});
  }
  g.axes = PauliString(x, z);
  g.basis_change = x == 0 ? BasisChange::kNone : BasisChange::kSingleQubit;
  g.pauli_terms = terms;
  return g;
}

void finish(MeasurementPlan& plan) {
  plan.fractions.assign(plan.groups.size(), plan.groups.empty() ? 0.0 : 1.0 / static_cast<double>(plan.groups.size()));
}

}  // namespace

MeasurementPlan plan_separate(const QubitOperator& h) {
  MeasurementPlan plan;
  plan.strategy = Strategy::kSeparate;
  plan.n_qubits = h.n_qubits();
  plan.total_constant = h.constant();
  for (const auto& [p, c] : h.terms()) plan.groups.push_back(pauli_group(p.label(), {{p, c}}));
  finish(plan);
  return plan;
}

MeasurementPlan plan_pauli_word_greedy(const QubitOperator& h, std::uint64_t seed) {
  MeasurementPlan plan;
  plan.strategy = Strategy::kPauliGrouping;
  plan.n_qubits = h.n_qubits();
  plan.total_constant = h.constant();
  std::vector<std::pair<PauliString, double>> diagonal, rest;
  for (const auto& [p, c] : h.terms()) (p.is_diagonal() ? diagonal : rest).emplace_back(p, c);
  if (!diagonal.empty()) plan.groups.push_back(pauli_group("pauli-0", diagonal));

  SplitMix64 rng(seed);
  fisher_yates(rest, rng);
  std::vector<bool> used(rest.size(), false);
  std::size_t remaining = rest.size();
  while (remaining > 0) {
    // One open group at a time: sweep the shuffled order, take every string that fits.
    std::vector<std::pair<PauliString, double>> members;
    std::uint64_t x = 0, z = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (used[i]) continue;
      const PauliString& p = rest[i].first;
      if (!qubitwise_commute(p, PauliString(x, z))) continue;
      members.push_back(rest[i]);
      x |= p.x_mask();
      z |= p.z_mask();
      used[i] = true;
      --remaining;
    }
    plan.groups.push_back(pauli_group("pauli-" + std::to_string(plan.groups.size()), members));
  }
  finish(plan);
  return plan;
}

MeasurementPlan plan_basis_rotation(const FactorizedHamiltonian& f) {
  const int m = f.n_spatial;
  MeasurementPlan plan;
  plan.strategy = Strategy::kBasisRotation;
  plan.n_qubits = 2 * m;
  plan.total_constant = f.constant;

  auto add_group = [&](std::string label, const Eigen::MatrixXd& u, const std::map<std::uint64_t, double>& terms) {
    MeasurementGroup g;
    g.label = std::move(label);
    g.basis_change = BasisChange::kGivens;
    g.network = decompose(u);
    for (const auto& [mask, c] : terms) {
      if (mask == 0)
        plan.total_constant += c;
      else if (c != 0.0)
        g.observable.push_back({mask, c});
    }
    plan.groups.push_back(std::move(g));
  };
  auto bit = [](int q) { return std::uint64_t{1} << q; };

  std::map<std::uint64_t, double> one;
  for (int p = 0; p < m; ++p) {
    const double g = f.one_body.g[p];
    one[0] += g;
    one[bit(p)] -= 0.5 * g;
    one[bit(p + m)] -= 0.5 * g;
  }
  add_group("one-body", f.one_body.u, one);

  for (std::size_t l = 0; l < f.fragments.size(); ++l) {
    const auto& frag = f.fragments[l];
    std::map<std::uint64_t, double> terms;
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) {
        const double g = frag.g(p, q);
        for (int sp = 0; sp < 2; ++sp)
          for (int sq = 0; sq < 2; ++sq) {
            const int a = p + sp * m, b = q + sq * m;
            if (a == b) {  // n_a^2 = n_a = (1 - Z_a)/2
              terms[0] += 0.5 * g;
              terms[bit(a)] -= 0.5 * g;
            } else {  // n_a n_b = (1 - Z_a - Z_b + Z_a Z_b)/4
              terms[0] += 0.25 * g;
              terms[bit(a)] -= 0.25 * g;
              terms[bit(b)] -= 0.25 * g;
              terms[bit(a) | bit(b)] += 0.25 * g;
            }
          }
      }
    add_group("fragment-" + std::to_string(l + 1), frag.u, terms);
  }
  finish(plan);
  return plan;
}

}  // namespace brg
