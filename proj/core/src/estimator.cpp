// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "brg/estimator.hpp"

namespace brg {

namespace {

GroupStatistics diagonal_statistics(const std::vector<ZMonomial>& observable, const SectorState& state) {
  double mean = 0.0, second = 0.0;
  for (std::size_t k = 0; k < state.basis.dimension(); ++k) {
    const double a = state.amplitudes[static_cast<Eigen::Index>(k)];
    const double prob = a * a;
    if (prob == 0.0) continue;
    const double value = diagonal_value(observable, state.basis.bitstring(k));
    mean += prob * value;
    second += prob * value * value;
  }
  return {mean, std::max(0.0, second - mean * mean), 0.0};
}

}  // namespace

std::vector<GroupStatistics> group_statistics(const MeasurementPlan& plan, const SectorState& state) {
  const int n_qubits = 2 * state.basis.n_spatial();
  if (plan.n_qubits > n_qubits) throw std::invalid_argument("group_statistics: plan acts on more qubits than the state");
  std::vector<GroupStatistics> out;
  out.reserve(plan.groups.size());
  Eigen::VectorXd dense;
  Eigen::VectorXd work;
  for (const auto& g : plan.groups) {
    if (g.basis_change == BasisChange::kGivens) {
      SectorState rotated = state;
      apply_network(g.network, rotated, /*dagger=*/true);
      out.push_back(diagonal_statistics(g.observable, rotated));
      continue;
    }
    if (g.basis_change == BasisChange::kNone) {
      out.push_back(diagonal_statistics(g.observable, state));
      continue;
    }
    if (dense.size() == 0) dense = state.to_dense();
    if (g.pauli_terms.size() == 1) {
      const auto& [p, c] = g.pauli_terms.front();
      const double e = pauli_expectation(p, dense);
      out.push_back({c * e, std::max(0.0, c * c * (1.0 - e * e)), 0.0});
      continue;
    }
    // Var(O) = |O psi|^2 - <psi|O psi>^2; O is real symmetric on a real state.
    work.setZero(dense.size());
    for (const auto& [p, c] : g.pauli_terms) apply_pauli_accumulate(p, c, dense, work);
    const double mean = dense.dot(work);
    out.push_back({mean, std::max(0.0, work.squaredNorm() - mean * mean), 0.0});
  }
  for (std::size_t i = 0; i < out.size() && i < plan.fractions.size(); ++i) out[i].fraction = plan.fractions[i];
  return out;
}

double plan_energy(const MeasurementPlan& plan, const std::vector<GroupStatistics>& stats) {
  double e = plan.total_constant;
  for (const auto& s : stats) e += s.mean;
  return e;
}

namespace {

double weight_of(const std::vector<double>& weights, std::size_t i) { return weights.empty() ? 1.0 : weights.at(i); }

// Variances below this are treated as exact zeros (roundoff on symmetry-fixed observables).
constexpr double kVarianceFloor = 1e-20;

}  // namespace

std::vector<double> allocate(const std::vector<GroupStatistics>& stats, const std::vector<double>& weights) {
  if (!weights.empty() && weights.size() != stats.size()) throw std::invalid_argument("allocate: weight count mismatch");
  std::vector<double> f(stats.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (stats[i].variance <= kVarianceFloor) continue;
    f[i] = std::abs(weight_of(weights, i)) * std::sqrt(stats[i].variance);
    total += f[i];
  }
  if (total <= 0.0) throw ZeroVarianceError("allocate: every group has zero variance; no measurement is needed");
  for (auto& x : f) x /= total;
  return f;
}

double total_measurements(const std::vector<GroupStatistics>& stats, const std::vector<double>& fractions,
                          double epsilon, const std::vector<double>& weights) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("total_measurements: epsilon must be positive");
  if (fractions.size() != stats.size()) throw std::invalid_argument("total_measurements: fraction count mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const double w = weight_of(weights, i);
    const double v = stats[i].variance;
    if (v <= kVarianceFloor) continue;
    if (fractions[i] <= 0.0)
      throw std::invalid_argument("total_measurements: group " + std::to_string(i) + " has variance but no shots");
    m += w * w * v / fractions[i];
  }
  return m / (epsilon * epsilon);
}

double optimal_variance_sum(const std::vector<GroupStatistics>& stats) {
  double s = 0.0;
  for (const auto& g : stats) s += std::sqrt(std::max(0.0, g.variance));
  return s * s;
}

L1Bounds l1_bounds(const FermionOperator& h_fermionic, const QubitOperator& h_qubit) {
  const auto p = classify_partitions(h_fermionic);
  const auto& c = p.classes;
  const double tight = 0.5 * c[0] + c[1] + 0.5 * c[2] + c[3] + c[4];
  const double l1 = h_qubit.l1_norm();
  return {l1 * l1, p.total() * p.total(), tight * tight};
}

WeckerApproximations wecker_approximations(const FermionOperator& h_fermionic) {
  const auto parts = split_partitions(h_fermionic);
  const auto sums = classify_partitions(h_fermionic).classes;
  const double f = sums[1] + sums[3] + sums[4];
  FermionOperator reduced = parts[1];
  reduced += parts[3];
  reduced += parts[4];
  const double q = jordan_wigner(reduced).l1_norm();
  return {f * f, q * q};
}

std::array<double, 5> qubit_partition_norms(const FermionOperator& h_fermionic) {
  const auto parts = split_partitions(h_fermionic);
  std::array<double, 5> out{};
  for (std::size_t k = 0; k < 5; ++k) out[k] = jordan_wigner(parts[k]).l1_norm();
  return out;
}

PowerLawFit powerlaw_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("powerlaw_fit: need at least three points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, m] : points) {
    if (!(n > 0.0) || !(m > 0.0)) throw std::invalid_argument("powerlaw_fit: points must be positive");
    const double x = std::log(n), y = std::log(m);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(points.size());
  const double denom = k * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) throw std::invalid_argument("powerlaw_fit: all N values are equal");
  const double b = (k * sxy - sx * sy) / denom;
  return {(sy - b * sx) / k, b};
}

std::string_view to_string(AllocationSource a) {
  switch (a) {
    case AllocationSource::kCisd: return "cisd";
    case AllocationSource::kFci: return "fci";
    case AllocationSource::kUniform: return "uniform";
  }
  return "?";
}

AllocationSource parse_allocation(std::string_view token) {
  if (token == "cisd") return AllocationSource::kCisd;
  if (token == "fci") return AllocationSource::kFci;
  if (token == "uniform") return AllocationSource::kUniform;
  throw std::invalid_argument("unknown allocation '" + std::string(token) + "' (expected cisd, fci or uniform)");
}

std::string cost_csv_header() {
  return "system,n_qubits,strategy,allocation,epsilon_Eh,fci_energy_Eh,hf_energy_Eh,n_groups,"
         "variance_fci_Eh2,variance_hf_Eh2,m_total,m_optimal,penalty_ratio,"
         "bound_qubit_Eh2,bound_fermi_naive_Eh2,bound_fermi_tight_Eh2,fva_Eh2,qva_Eh2";
}

std::string cost_csv_row(const CostRow& r) {
  char buf[1024];
  std::snprintf(buf, sizeof(buf), "%s,%d,%s,%s,%.6g,%.10f,%.10f,%d,%.10g,%.10g,%.10g,%.10g,%.10f,%.10g,%.10g,%.10g,%.10g,%.10g",
                r.system.c_str(), r.n_qubits, r.strategy.c_str(), r.allocation.c_str(), r.epsilon, r.fci_energy,
                r.hf_energy, r.n_groups, r.variance_fci, r.variance_hf, r.m_total, r.m_optimal, r.penalty_ratio,
                r.bounds.qubit, r.bounds.fermi_naive, r.bounds.fermi_tight, r.wecker.fva, r.wecker.qva);
  return buf;
}

}  // namespace brg
