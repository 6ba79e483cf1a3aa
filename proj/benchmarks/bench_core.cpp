// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <map>

#include "brg/factorization.hpp"
#include "brg/givens.hpp"
#include "brg/grouping.hpp"
#include "brg/noisysim.hpp"
#include "brg/pauli.hpp"
#include "brg/pipeline.hpp"
#include "brg/sector.hpp"

namespace {

const brg::SystemInput& chain(int atoms) {
  static std::map<int, brg::SystemInput> cache;
  auto it = cache.find(atoms);
  if (it == cache.end()) it = cache.emplace(atoms, brg::hydrogen_chain_input(atoms, 1.0, "sto-3g")).first;
  return it->second;
}

void BM_BuildHamiltonian(benchmark::State& state) {
  const auto& input = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brg::build_hamiltonian(input.integrals));
}
BENCHMARK(BM_BuildHamiltonian)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_JordanWigner(benchmark::State& state) {
  const auto h = brg::build_hamiltonian(chain(static_cast<int>(state.range(0))).integrals);
  for (auto _ : state) benchmark::DoNotOptimize(brg::jordan_wigner(h));
}
BENCHMARK(BM_JordanWigner)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SectorHamiltonian(benchmark::State& state) {
  const auto& input = chain(static_cast<int>(state.range(0)));
  const auto h = brg::build_hamiltonian(input.integrals);
  const brg::SectorBasis basis(input.integrals.n_spatial, input.n_up, input.n_down);
  for (auto _ : state) benchmark::DoNotOptimize(brg::sector_hamiltonian(h, basis));
  state.counters["dim"] = static_cast<double>(basis.dimension());
}
BENCHMARK(BM_SectorHamiltonian)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Factorize(benchmark::State& state) {
  const auto& input = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brg::factorize(input.integrals));
}
BENCHMARK(BM_Factorize)->Arg(4)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_GivensDecompose(benchmark::State& state) {
  const auto u = brg::random_special_orthogonal(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(brg::decompose(u));
}
BENCHMARK(BM_GivensDecompose)->RangeMultiplier(2)->Range(4, 32);

void BM_PauliGreedy(benchmark::State& state) {
  const auto q = brg::jordan_wigner(brg::build_hamiltonian(chain(static_cast<int>(state.range(0))).integrals));
  for (auto _ : state) benchmark::DoNotOptimize(brg::plan_pauli_word_greedy(q));
}
BENCHMARK(BM_PauliGreedy)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_NoisyNetwork(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto net = brg::decompose(brg::random_special_orthogonal(m, 3));
  brg::DensityMatrix rho(2 * m);
  rho.matrix()(0, 0) = 1.0;
  const brg::NoiseModel noise{1e-3, 0.0};
  for (auto _ : state) {
    brg::DensityMatrix copy = rho;
    brg::apply_network_noisy(copy, net, true, noise);
    benchmark::DoNotOptimize(copy.matrix().data());
  }
}
BENCHMARK(BM_NoisyNetwork)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
