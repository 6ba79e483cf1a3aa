// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <bit>
#include <complex>
#include <sstream>

#include "brg/estimator.hpp"
#include "brg/factorization.hpp"
#include "brg/pipeline.hpp"
#include "brg/sector.hpp"
#include "oracles.hpp"

namespace brg {
namespace {

using Complex = std::complex<double>;

const PreparedSystem& chain(int atoms, double spacing = 1.0) {
  static std::map<std::pair<int, double>, PreparedSystem> cache;
  auto key = std::pair(atoms, spacing);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, prepare_system(hydrogen_chain_input(atoms, spacing, "sto-3g"))).first;
  return it->second;
}

std::size_t binomial(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

// Dense <O^2> - <O>^2 for the operator measured by a group.
std::pair<double, double> dense_moments(const MeasurementGroup& g, const Eigen::VectorXd& psi, int n) {
  const Eigen::MatrixXcd o = oracle::group_matrix(g, n);
  const Eigen::VectorXcd z = psi.cast<Complex>();
  const Eigen::VectorXcd oz = o * z;
  const double mean = z.dot(oz).real();
  return {mean, oz.squaredNorm() - mean * mean};
}

TEST(StringSpace, EnumerationAndRank) {
  for (int n = 1; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) {
      const StringSpace s(n, k);
      ASSERT_EQ(s.size(), binomial(n, k));
      for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_EQ(std::popcount(s[i]), k);
        if (i > 0) {
          EXPECT_LT(s[i - 1], s[i]);
        }
        EXPECT_EQ(s.index(s[i]), i);
      }
    }
}

TEST(SectorBasis, FlatIndexLayout) {
  const SectorBasis b(4, 2, 1);
  EXPECT_EQ(b.dimension(), 6u * 4u);
  for (std::size_t k = 0; k < b.dimension(); ++k) {
    const auto bits = b.bitstring(k);
    EXPECT_EQ(bits, b.up()[k / 4] | (b.down()[k % 4] << 4));
    EXPECT_EQ(b.index(bits), k);
  }
  EXPECT_THROW(b.index(0b1111), std::out_of_range);
}

TEST(Sector, HamiltonianMatchesDenseRestriction) {
  oracle::Rng rng(71);
  const auto ints = oracle::random_integrals(4, rng);
  const Eigen::MatrixXd full = oracle::hamiltonian_matrix(ints);
  const auto h = build_hamiltonian(ints);
  for (auto [nu, nd] : {std::pair{2, 2}, std::pair{2, 1}, std::pair{0, 3}, std::pair{4, 4}}) {
    const SectorBasis basis(4, nu, nd);
    const Eigen::MatrixXd sparse(sector_hamiltonian(h, basis));
    for (std::size_t i = 0; i < basis.dimension(); ++i)
      for (std::size_t j = 0; j < basis.dimension(); ++j)
        EXPECT_NEAR(sparse(i, j), full(basis.bitstring(i), basis.bitstring(j)), 1e-12);
  }
  EXPECT_THROW(sector_hamiltonian(h, SectorBasis(4, 2, 2), 10), SectorTooLargeError);
}

TEST(Sector, LanczosAgreesWithDense) {
  const auto ints = build_molecular_system(hydrogen_chain(6, 1.2), "STO-3G").integrals;
  const auto h = build_hamiltonian(ints);
  const auto dense = fci_ground_state(h, 6, 3, 3);
  EigenOptions opts;
  opts.dense_limit = 0;
  const auto lanczos = fci_ground_state(h, 6, 3, 3, opts);
  EXPECT_NEAR(dense.energy, lanczos.energy, 1e-10);
  EXPECT_LE(lanczos.residual, 1e-8);
  EXPECT_NEAR(std::abs(dense.state.amplitudes.dot(lanczos.state.amplitudes)), 1.0, 1e-9);
  EXPECT_NEAR(lanczos.state.amplitudes.norm(), 1.0, 1e-12);
}

TEST(Fci, FilledSectorIsDeterminantEnergy) {
  oracle::Rng rng(72);
  const auto ints = oracle::random_integrals(3, rng);
  const auto h = build_hamiltonian(ints);
  const auto gs = fci_ground_state(h, 3, 3, 3);
  const Eigen::MatrixXd full = oracle::hamiltonian_matrix(ints);
  EXPECT_NEAR(gs.energy, full(63, 63), 1e-12);
}

TEST(Fci, H2AndErrors) {
  const auto& h2 = chain(2, 0.7414);
  EXPECT_NEAR(h2.fci.energy, -1.1373, 1e-4);
  EXPECT_NEAR(h2.fci.energy, oracle::sector_ground_energy(oracle::hamiltonian_matrix(h2.integrals), 2, 1, 1), 1e-10);
  FermionOperator bad;
  bad.add_term({create(0), annihilate(1)}, 1.0);
  EXPECT_THROW(fci_ground_state(bad, 1, 1, 0), std::invalid_argument);
}

TEST(Cisd, TwoElectronsEqualsFci) {
  const auto sys = prepare_system(hydrogen_chain_input(2, 0.9, "6-31g"));
  EXPECT_NEAR(sys.cisd.energy, sys.fci.energy, 1e-10);
  EXPECT_LT((sys.cisd.state.amplitudes - sys.fci.state.amplitudes).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Cisd, VariationalAboveFci) {
  const auto& h4 = chain(4);
  EXPECT_GE(h4.cisd.energy, h4.fci.energy - 1e-12);
  EXPECT_LE(h4.cisd.energy, h4.hf_energy + 1e-12);
  std::size_t support = 0;
  const auto ref = aufbau_bits(4, 2, 2);
  for (std::size_t k = 0; k < h4.cisd.state.basis.dimension(); ++k) {
    if (h4.cisd.state.amplitudes[k] == 0.0) continue;
    ++support;
    EXPECT_LE(std::popcount(h4.cisd.state.basis.bitstring(k) ^ ref), 4);
  }
  EXPECT_LT(support, h4.cisd.state.basis.dimension());
}

TEST(SectorState, DenseAndNetworkConsistency) {
  const auto& h4 = chain(4);
  const Eigen::VectorXd dense = h4.fci.state.to_dense();
  EXPECT_NEAR(dense.norm(), 1.0, 1e-12);
  oracle::Rng rng(73);
  const auto net = decompose(oracle::random_rotation(4, rng));
  for (bool dagger : {false, true}) {
    SectorState s = h4.fci.state;
    apply_network(net, s, dagger);
    Eigen::VectorXd d = dense;
    apply_to_statevector(net, d, dagger);
    EXPECT_LT((s.to_dense() - d).cwiseAbs().maxCoeff(), 1e-12);
  }
  const auto det = determinant_state(4, aufbau_bits(4, 2, 2));
  EXPECT_EQ(det.basis.n_up(), 2);
  EXPECT_EQ(aufbau_bits(4, 2, 2), 0b00110011u);
}

TEST(GroupStatistics, SingleStringExamples) {
  const auto vac = determinant_state(1, 0);
  QubitOperator z0;
  z0.add_term(PauliString::parse("Z0"), 1.0);
  auto stats = group_statistics(plan_separate(z0), vac);
  EXPECT_DOUBLE_EQ(stats[0].mean, 1.0);
  EXPECT_DOUBLE_EQ(stats[0].variance, 0.0);
  QubitOperator x0;
  x0.add_term(PauliString::parse("X0"), 0.7);
  stats = group_statistics(plan_separate(x0), vac);
  EXPECT_NEAR(stats[0].mean, 0.0, 1e-15);
  EXPECT_NEAR(stats[0].variance, 0.49, 1e-15);
}

TEST(GroupStatistics, MatchDenseMoments) {
  const auto& h4 = chain(4);
  const Eigen::VectorXd psi = h4.fci.state.to_dense();
  for (auto strategy : {Strategy::kPauliGrouping, Strategy::kBasisRotation, Strategy::kSeparate}) {
    const auto plan = build_plan(h4, strategy, 4);
    const auto stats = group_statistics(plan, h4.fci.state);
    for (std::size_t g = 0; g < plan.groups.size(); g += (strategy == Strategy::kSeparate ? 7 : 1)) {
      const auto [mean, var] = dense_moments(plan.groups[g], psi, 8);
      EXPECT_NEAR(stats[g].mean, mean, 1e-10);
      EXPECT_NEAR(stats[g].variance, std::max(0.0, var), 1e-10);
      EXPECT_GE(stats[g].variance, 0.0);
    }
  }
}

TEST(GroupStatistics, PlanEnergyIsFciEnergy) {
  for (int atoms : {2, 4, 6}) {
    const auto& sys = chain(atoms);
    for (auto strategy : {Strategy::kSeparate, Strategy::kPauliGrouping, Strategy::kBasisRotation}) {
      const auto plan = build_plan(sys, strategy);
      EXPECT_NEAR(plan_energy(plan, group_statistics(plan, sys.fci.state)), sys.fci.energy, 1e-8)
          << atoms << " " << to_string(strategy);
      EXPECT_NEAR(plan_energy(plan, group_statistics(plan, sys.hartree_fock)), sys.hf_energy, 1e-8);
    }
  }
}

TEST(GroupStatistics, HartreeFockMechanism) {
  const auto& h6 = chain(6);
  const auto plan = plan_separate(h6.qubit);
  const auto stats = group_statistics(plan, h6.hartree_fock);
  for (std::size_t g = 0; g < plan.groups.size(); ++g) {
    const auto& p = plan.groups[g].pauli_terms[0].first;
    if (p.is_diagonal()) {
      EXPECT_NEAR(stats[g].variance, 0.0, 1e-14) << p.label();
    } else {
      EXPECT_NEAR(stats[g].mean, 0.0, 1e-14) << p.label();
    }
  }
}

TEST(Allocate, Examples) {
  std::vector<GroupStatistics> two{{0, 4.0, 0}, {0, 4.0, 0}};
  auto f = allocate(two);
  EXPECT_DOUBLE_EQ(f[0], 0.5);
  EXPECT_DOUBLE_EQ(f[1], 0.5);
  std::vector<GroupStatistics> with_zero{{0, 1.0, 0}, {1.0, 0.0, 0}, {0, 9.0, 0}};
  f = allocate(with_zero);
  EXPECT_DOUBLE_EQ(f[1], 0.0);
  EXPECT_NEAR(f[0], 0.25, 1e-15);
  EXPECT_NEAR(f[2], 0.75, 1e-15);
  EXPECT_THROW(allocate({{1.0, 0.0, 0}}), ZeroVarianceError);
  f = allocate(two, {1.0, 3.0});
  EXPECT_NEAR(f[1], 0.75, 1e-15);
}

TEST(Allocate, SaturatedPauliStringGetsNoShots) {
  // Z0 on |0> has <P> = 1, so it needs no shots next to X0.
  QubitOperator h;
  h.add_term(PauliString::parse("Z0"), 0.3);
  h.add_term(PauliString::parse("X0"), 0.2);
  const auto stats = group_statistics(plan_separate(h), determinant_state(1, 0));
  const auto f = allocate(stats);
  for (std::size_t g = 0; g < stats.size(); ++g) {
    if (stats[g].mean != 0.0) {
      EXPECT_EQ(f[g], 0.0);
    }
  }
}

TEST(TotalMeasurements, FormulaAndOptimality) {
  EXPECT_DOUBLE_EQ(total_measurements({{0, 2.0, 0}}, {1.0}, 0.1), 200.0);
  EXPECT_THROW(total_measurements({{0, 2.0, 0}, {0, 1.0, 0}}, {1.0, 0.0}, 0.1), std::invalid_argument);
  EXPECT_THROW(total_measurements({{0, 2.0, 0}}, {1.0}, 0.0), std::invalid_argument);
  const auto& h4 = chain(4);
  const auto plan = build_plan(h4, Strategy::kPauliGrouping);
  const auto stats = group_statistics(plan, h4.fci.state);
  const auto opt = allocate(stats);
  const double m_opt = total_measurements(stats, opt, kDefaultEpsilon);
  EXPECT_NEAR(m_opt, optimal_variance_sum(stats) / (kDefaultEpsilon * kDefaultEpsilon), 1e-6 * m_opt);
  oracle::Rng rng(74);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> f(stats.size());
    double sum = 0.0;
    for (auto& x : f) sum += (x = rng.uniform(0.01, 1.0));
    for (auto& x : f) x /= sum;
    EXPECT_GE(total_measurements(stats, f, kDefaultEpsilon), m_opt * (1 - 1e-12));
  }
}

TEST(Bounds, ZeroHamiltonian) {
  const auto b = l1_bounds(FermionOperator(), QubitOperator());
  EXPECT_EQ(b.qubit, 0.0);
  EXPECT_EQ(b.fermi_naive, 0.0);
  EXPECT_EQ(b.fermi_tight, 0.0);
}

TEST(Bounds, QubitBoundAboveSeparateVariance) {
  for (int atoms : {2, 4, 6}) {
    const auto& sys = chain(atoms);
    const auto stats = group_statistics(plan_separate(sys.qubit), sys.fci.state);
    EXPECT_GE(sys.bounds.qubit, optimal_variance_sum(stats));
    EXPECT_GE(sys.bounds.fermi_naive, sys.bounds.fermi_tight);
  }
}

TEST(Bounds, WeckerApproximations) {
  FermionOperator diag;
  diag.add_term({create(0), annihilate(0)}, 0.3);
  diag.add_term({create(1), create(0), annihilate(1), annihilate(0)}, -0.2);
  const auto w = wecker_approximations(diag);
  EXPECT_EQ(w.fva, 0.0);
  EXPECT_EQ(w.qva, 0.0);
  for (int atoms : {2, 4, 6}) {
    const auto& sys = chain(atoms);
    const double hf_var = optimal_variance_sum(group_statistics(plan_separate(sys.qubit), sys.hartree_fock));
    EXPECT_NEAR(sys.wecker.qva / hf_var, 1.0, 1e-6) << atoms;
  }
}

TEST(PowerLaw, ExactAndShifted) {
  std::vector<std::pair<double, double>> pts;
  for (double n : {4.0, 8.0, 12.0, 16.0}) pts.emplace_back(n, 2.0 * n * n * n);
  const auto fit = powerlaw_fit(pts);
  EXPECT_NEAR(fit.b, 3.0, 1e-10);
  EXPECT_NEAR(fit.log_a, std::log(2.0), 1e-10);
  for (auto& p : pts) p.second *= 7.0;
  const auto shifted = powerlaw_fit(pts);
  EXPECT_NEAR(shifted.b, 3.0, 1e-10);
  EXPECT_NEAR(shifted.log_a - fit.log_a, std::log(7.0), 1e-10);
  EXPECT_THROW(powerlaw_fit({{1, 1}, {2, 2}}), std::invalid_argument);
  EXPECT_THROW(powerlaw_fit({{1, 1}, {2, -2}, {3, 3}}), std::invalid_argument);
}

TEST(Cost, PenaltyRatios) {
  const auto& h2 = chain(2, 0.7414);
  const auto row2 = cost_strategy(h2, build_plan(h2, Strategy::kBasisRotation), AllocationSource::kCisd);
  EXPECT_NEAR(row2.penalty_ratio, 1.0, 1e-8);
  const auto& h4 = chain(4);
  for (auto strategy : {Strategy::kSeparate, Strategy::kPauliGrouping, Strategy::kBasisRotation}) {
    const auto plan = build_plan(h4, strategy);
    const auto cisd = cost_strategy(h4, plan, AllocationSource::kCisd);
    EXPECT_GE(cisd.penalty_ratio, 1.0 - 1e-12);
    EXPECT_LE(cisd.penalty_ratio, 1.05);
    const auto fci = cost_strategy(h4, plan, AllocationSource::kFci);
    EXPECT_NEAR(fci.penalty_ratio, 1.0, 1e-10);
    const auto uniform = cost_strategy(h4, plan, AllocationSource::kUniform);
    EXPECT_GE(uniform.m_total, fci.m_total);
  }
}

TEST(Cost, CsvShape) {
  const auto& h4 = chain(4);
  const auto row = cost_strategy(h4, build_plan(h4, Strategy::kBasisRotation), parse_allocation("cisd"));
  const std::string header = cost_csv_header();
  const std::string line = cost_csv_row(row);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(line.begin(), line.end(), ','));
  EXPECT_EQ(line.rfind(h4.name + ",8,brg,cisd,", 0), 0u);
  EXPECT_THROW(parse_allocation("greedy"), std::invalid_argument);
  EXPECT_EQ(to_string(AllocationSource::kUniform), "uniform");
}

TEST(Cost, H8SeparateMeasurementCount) {
  const auto& h8 = chain(8);
  const auto row = cost_strategy(h8, build_plan(h8, Strategy::kSeparate), AllocationSource::kFci);
  EXPECT_NEAR(row.variance_fci / 100, 6.929, 0.01 * 6.929);
  EXPECT_NEAR(row.m_optimal, 2.77e9, 0.01 * 2.77e9);
}

}  // namespace
}  // namespace brg
