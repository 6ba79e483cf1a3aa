// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "brg/fcidump.hpp"
#include "brg/integrals.hpp"
#include "brg/pipeline.hpp"

namespace brg {

SystemInput geometry_input(const Geometry& geometry, const std::string& basis, std::string name) {
  if (geometry.multiplicity != 1) throw std::invalid_argument("geometry input: only closed-shell singlets are supported");
  if (geometry.n_electrons() % 2 != 0) throw std::invalid_argument("geometry input: odd electron count; RHF needs pairs");
  auto system = build_molecular_system(geometry, basis);
  SystemInput out;
  out.name = std::move(name);
  out.integrals = std::move(system.integrals);
  out.n_up = out.n_down = system.n_electrons / 2;
  out.scf_energy = system.scf.energy;
  return out;
}

SystemInput hydrogen_chain_input(int n_atoms, double spacing_angstrom, const std::string& basis) {
  char name[64];
  std::snprintf(name, sizeof(name), "H%d_%.4f_%s", n_atoms, spacing_angstrom, basis.c_str());
  return geometry_input(hydrogen_chain(n_atoms, spacing_angstrom), basis, name);
}

SystemInput fcidump_input(const std::string& path) {
  auto doc = fcidump::read_file(path);
  const int nelec = doc.header.nelec;
  const int ms2 = doc.header.ms2;
  if ((nelec + ms2) % 2 != 0 || ms2 > nelec) throw std::invalid_argument("FCIDUMP: NELEC and MS2 are inconsistent");
  SystemInput out;
  out.name = path;
  out.integrals = std::move(doc.integrals);
  out.n_up = (nelec + ms2) / 2;
  out.n_down = (nelec - ms2) / 2;
  return out;
}

SystemInput with_frozen_core(const SystemInput& input, const std::vector<int>& frozen) {
  if (frozen.empty()) return input;
  const int k = static_cast<int>(frozen.size());
  if (k > input.n_up || k > input.n_down) throw std::invalid_argument("freeze_core: more frozen orbitals than electron pairs");
  SystemInput out = input;
  out.integrals = freeze_core(input.integrals, frozen);
  out.n_up -= k;
  out.n_down -= k;
  return out;
}

PreparedSystem prepare_system(const SystemInput& input, const EigenOptions& options) {
  PreparedSystem s;
  s.name = input.name;
  s.integrals = input.integrals;
  s.n_up = input.n_up;
  s.n_down = input.n_down;
  const int m = s.integrals.n_spatial;
  s.fermionic = build_hamiltonian(s.integrals);
  s.qubit = jordan_wigner(s.fermionic);
  s.fci = fci_ground_state(s.fermionic, m, s.n_up, s.n_down, options);
  const std::uint64_t ref = aufbau_bits(m, s.n_up, s.n_down);
  s.cisd = cisd_state(s.fermionic, m, ref, s.n_up, s.n_down, options);
  s.hartree_fock = determinant_state(m, ref);
  const auto h = sector_hamiltonian(s.fermionic, s.hartree_fock.basis);
  s.hf_energy = expectation(h, s.hartree_fock.amplitudes);
  s.bounds = l1_bounds(s.fermionic, s.qubit);
  s.wecker = wecker_approximations(s.fermionic);
  return s;
}

MeasurementPlan build_plan(const PreparedSystem& system, Strategy strategy, std::uint64_t seed) {
  switch (strategy) {
    case Strategy::kSeparate: return plan_separate(system.qubit);
    case Strategy::kPauliGrouping: return plan_pauli_word_greedy(system.qubit, seed);
    case Strategy::kBasisRotation: return plan_basis_rotation(factorize(system.integrals));
  }
  throw std::invalid_argument("build_plan: unknown strategy");
}

CostRow cost_strategy(const PreparedSystem& system, const MeasurementPlan& plan, AllocationSource allocation,
                      double epsilon) {
  CostRow row;
  row.system = system.name;
  row.n_qubits = system.n_qubits();
  row.strategy = std::string(to_string(plan.strategy));
  row.allocation = std::string(to_string(allocation));
  row.epsilon = epsilon;
  row.fci_energy = system.fci.energy;
  row.hf_energy = system.hf_energy;
  row.n_groups = static_cast<int>(plan.groups.size());
  row.bounds = system.bounds;
  row.wecker = system.wecker;

  const auto fci_stats = group_statistics(plan, system.fci.state);
  const auto hf_stats = group_statistics(plan, system.hartree_fock);
  row.variance_fci = optimal_variance_sum(fci_stats);
  row.variance_hf = optimal_variance_sum(hf_stats);
  row.m_optimal = row.variance_fci / (epsilon * epsilon);

  std::vector<double> fractions;
  switch (allocation) {
    case AllocationSource::kFci: fractions = allocate(fci_stats); break;
    case AllocationSource::kCisd: fractions = allocate(group_statistics(plan, system.cisd.state)); break;
    case AllocationSource::kUniform:
      fractions.assign(plan.groups.size(), 1.0 / static_cast<double>(plan.groups.size()));
      break;
  }
  row.m_total = total_measurements(fci_stats, fractions, epsilon);
  row.penalty_ratio = row.m_optimal > 0 ? row.m_total / row.m_optimal : 1.0;
  return row;
}

NoiseGrid NoiseGrid::defaults() {
  return {{2.5e-4, 5e-4, 1e-3, 2e-3, 4e-3, 8e-3}, {6.25e-4, 1.25e-3, 2.5e-3, 5e-3, 1e-2}};
}

NoiseGrid NoiseGrid::parse(std::string_view text) {
  NoiseGrid grid;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key) || key[0] == '#') continue;
    std::vector<double>* target = nullptr;
    if (key == "p_depol")
      target = &grid.p_depol;
    else if (key == "p_readout")
      target = &grid.p_readout;
    else
      throw std::invalid_argument("noise grid line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    std::string value;
    while (fields >> value) {
      try {
        target->push_back(std::stod(value));
      } catch (const std::exception&) {
        throw std::invalid_argument("noise grid line " + std::to_string(line_no) + ": bad value '" + value + "'");
      }
    }
  }
  if (grid.p_depol.empty() || grid.p_readout.empty())
    throw std::invalid_argument("noise grid: both p_depol and p_readout lines are required");
  return grid;
}

std::vector<NoiseRow> noise_sweep(const PreparedSystem& system, const NoiseGrid& grid, const NoiseOptions& options) {
  const int m = system.n_spatial();
  const PostselectionFilter filter{m, system.n_up, system.n_down};
  const auto pauli_plan = build_plan(system, Strategy::kPauliGrouping, options.seed);
  const auto brg_plan = build_plan(system, Strategy::kBasisRotation, options.seed);
  const DensityMatrix exact = DensityMatrix::pure(system.fci.state.to_dense());
  std::vector<GivensNetwork> prep;
  if (options.identity_networks >= 2) prep = random_identity_prep(options.identity_networks, m, options.seed);
  const double e_ref = system.fci.energy;

  std::vector<NoiseRow> rows;
  for (const double pd : grid.p_depol) {
    DensityMatrix rho = exact;
    const NoiseModel prep_noise{pd, 0.0, options.channel};
    for (const auto& net : prep) apply_network_noisy(rho, net, /*dagger=*/false, prep_noise);
    for (const double pr : grid.p_readout) {
      const NoiseModel noise{pd, pr, options.channel};
      noise.validate();
      auto push = [&](const char* strategy, const char* mitigation, const NoisyEstimate& e) {
        rows.push_back({pd, pr, strategy, mitigation, 1e3 * std::abs(e.energy - e_ref), e.retained_fraction});
      };
      push("pauli", "none", estimate_energy(pauli_plan, rho, noise));
      push("pauli", "parity", parity_projected_energy(system.qubit, rho, filter, pr));
      push("brg", "none", estimate_energy(brg_plan, rho, noise));
      push("brg", "postselect", estimate_energy(brg_plan, rho, noise, filter));
    }
  }
  return rows;
}

std::string noise_csv_header() { return "p_depol,p_readout,strategy,mitigation,abs_error_mHa,retained_fraction"; }

std::string noise_csv_row(const NoiseRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%s,%s,%.10g,%.10f", r.p_depol, r.p_readout, r.strategy.c_str(),
                r.mitigation.c_str(), r.abs_error_mha, r.retained_fraction);
  return buf;
}

}  // namespace brg
