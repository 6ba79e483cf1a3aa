// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "brg/limits.hpp"
#include "brg/noisysim.hpp"
#include "brg/random.hpp"

namespace brg {

using Complex = std::complex<double>;

std::string_view to_string(GateChannel c) { return c == GateChannel::kDepolarizing ? "depolarizing" : "dephasing"; }

GateChannel parse_gate_channel(std::string_view token) {
  if (token == "depolarizing") return GateChannel::kDepolarizing;
  if (token == "dephasing") return GateChannel::kDephasing;
  throw std::invalid_argument("unknown gate channel '" + std::string(token) + "' (expected depolarizing or dephasing)");
}

void NoiseModel::validate() const {
  if (!(p_depol >= 0.0 && p_depol <= 0.5)) throw std::invalid_argument("noise: p_depol must lie in [0, 1/2]");
  if (!(p_readout >= 0.0 && p_readout <= 0.5)) throw std::invalid_argument("noise: p_readout must lie in [0, 1/2]");
}

DensityMatrix::DensityMatrix(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxQubits)
    throw std::invalid_argument("DensityMatrix: " + std::to_string(n_qubits) + " qubits exceeds the engine limit of " +
                                std::to_string(kMaxQubits));
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (dim * dim * sizeof(Complex) > engine_memory_limit_bytes())
    throw std::invalid_argument("DensityMatrix: allocation exceeds the engine memory cap (" + std::string(kMemoryEnvVar) + ")");
  rho_ = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  rho_(0, 0) = 1.0;
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const int n = std::countr_zero(static_cast<std::uint64_t>(psi.size()));
  if ((Eigen::Index{1} << n) != psi.size()) throw std::invalid_argument("DensityMatrix::pure: size is not a power of two");
  DensityMatrix out(n);
  const Eigen::VectorXcd v = psi.normalized();
  out.rho_ = v * v.adjoint();
  return out;
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXd& psi) { return pure(Eigen::VectorXcd(psi.cast<Complex>())); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::apply_givens(int q, double theta) {
  // rho -> G rho G^T = G (G rho)^dagger for real G and Hermitian rho.
  const double c = std::cos(theta), s = std::sin(theta);
  const std::uint64_t lo = std::uint64_t{1} << q, hi = lo << 1;
  const auto dim = static_cast<std::uint64_t>(rho_.rows());
  auto left = [&](Eigen::MatrixXcd& m) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      if ((b & lo) == 0 || (b & hi) != 0) continue;
      const auto i = static_cast<Eigen::Index>(b), j = static_cast<Eigen::Index>(b ^ lo ^ hi);
      const Eigen::RowVectorXcd x = m.row(i), y = m.row(j);
      m.row(i) = c * x - s * y;
      m.row(j) = s * x + c * y;
    }
  };
  left(rho_);
  rho_.adjointInPlace();
  left(rho_);
}

void DensityMatrix::apply_single_qubit(int q, const Eigen::Matrix2cd& u) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  const auto dim = static_cast<std::uint64_t>(rho_.rows());
  auto left = [&](Eigen::MatrixXcd& m) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      if (b & bit) continue;
      const auto i = static_cast<Eigen::Index>(b), j = static_cast<Eigen::Index>(b | bit);
      const Eigen::RowVectorXcd x = m.row(i), y = m.row(j);
      m.row(i) = u(0, 0) * x + u(0, 1) * y;
      m.row(j) = u(1, 0) * x + u(1, 1) * y;
    }
  };
  left(rho_);
  rho_.adjointInPlace();
  left(rho_);
}

void DensityMatrix::depolarize(int q, double p) {
  if (p == 0.0) return;
  // Coherences in qubit q shrink by 1 - 4p/3; population pairs mix with weight 2p/3.
  const std::uint64_t bit = std::uint64_t{1} << q;
  const auto dim = static_cast<std::uint64_t>(rho_.rows());
  const double keep = 1.0 - 2.0 * p / 3.0, mix = 2.0 * p / 3.0, coh = 1.0 - 4.0 * p / 3.0;
  for (std::uint64_t b = 0; b < dim; ++b)
    for (std::uint64_t a = 0; a < dim; ++a) {
      const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
      if (((a ^ b) & bit) != 0) {
        rho_(ia, ib) *= coh;
      } else if ((a & bit) == 0) {
        const auto ja = static_cast<Eigen::Index>(a | bit), jb = static_cast<Eigen::Index>(b | bit);
        const Complex x = rho_(ia, ib), y = rho_(ja, jb);
        rho_(ia, ib) = keep * x + mix * y;
        rho_(ja, jb) = mix * x + keep * y;
      }
    }
}

void DensityMatrix::dephase(int q, double p) {
  if (p == 0.0) return;
  const std::uint64_t bit = std::uint64_t{1} << q;
  const auto dim = static_cast<std::uint64_t>(rho_.rows());
  for (std::uint64_t b = 0; b < dim; ++b)
    for (std::uint64_t a = 0; a < dim; ++a)
      if (((a ^ b) & bit) != 0) rho_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *= 1.0 - 2.0 * p;
}

void DensityMatrix::gate_noise(int q, const NoiseModel& noise) {
  if (noise.channel == GateChannel::kDepolarizing)
    depolarize(q, noise.p_depol);
  else
    dephase(q, noise.p_depol);
}

std::vector<double> DensityMatrix::populations() const {
  std::vector<double> out(static_cast<std::size_t>(rho_.rows()));
  for (Eigen::Index i = 0; i < rho_.rows(); ++i) out[static_cast<std::size_t>(i)] = std::max(0.0, rho_(i, i).real());
  return out;
}

bool PostselectionFilter::accepts(std::uint64_t bits) const {
  const std::uint64_t mask = (std::uint64_t{1} << n_spatial) - 1;
  return std::popcount(bits & mask) == n_up && std::popcount((bits >> n_spatial) & mask) == n_down;
}

void apply_readout_noise(std::vector<double>& dist, int n_qubits, double p) {
  if (p == 0.0) return;
  for (int q = 0; q < n_qubits; ++q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t b = 0; b < dist.size(); ++b) {
      if (b & bit) continue;
      const double x = dist[b], y = dist[b | bit];
      dist[b] = (1.0 - p) * x + p * y;
      dist[b | bit] = p * x + (1.0 - p) * y;
    }
  }
}

void apply_network_noisy(DensityMatrix& rho, const GivensNetwork& network, bool dagger, const NoiseModel& noise) {
  const int m = network.n_modes;
  if (rho.n_qubits() != 2 * m) throw std::invalid_argument("apply_network_noisy: register is not 2M qubits");
  const auto n = network.rotations.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& g = dagger ? network.rotations[n - 1 - k] : network.rotations[k];
    const double theta = dagger ? -g.theta : g.theta;
    for (int offset : {0, m}) {
      const int q = g.wire + offset;
      rho.apply_givens(q, theta);
      rho.gate_noise(q, noise);
      rho.gate_noise(q + 1, noise);
    }
  }
}

namespace {

Eigen::Matrix2cd to_z_rotation(Pauli axis) {
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd h;
  h << r, r, r, -r;
  if (axis == Pauli::kX) return h;
  Eigen::Matrix2cd s_dag;
  s_dag << 1, 0, 0, Complex(0, -1);
  return h * s_dag;  // Y -> Z
}

}  // namespace

std::vector<double> run_group(const DensityMatrix& rho, const MeasurementGroup& group, const NoiseModel& noise) {
  noise.validate();
  DensityMatrix work = rho;
  if (group.basis_change == BasisChange::kGivens) {
    apply_network_noisy(work, group.network, /*dagger=*/true, noise);
  } else if (group.basis_change == BasisChange::kSingleQubit) {
    for (int q = 0; q < work.n_qubits(); ++q) {
      const Pauli axis = group.axes.at(q);
      if (axis == Pauli::kX || axis == Pauli::kY) work.apply_single_qubit(q, to_z_rotation(axis));
    }
  }
  auto dist = work.populations();
  apply_readout_noise(dist, work.n_qubits(), noise.p_readout);
  return dist;
}

NoisyEstimate estimate_energy(const MeasurementPlan& plan, const DensityMatrix& rho, const NoiseModel& noise,
                              const std::optional<PostselectionFilter>& filter) {
  NoisyEstimate out;
  out.energy = plan.total_constant;
  double retained_sum = 0.0;
  for (const auto& g : plan.groups) {
    const auto dist = run_group(rho, g, noise);
    double mass = 0.0, mean = 0.0;
    for (std::size_t b = 0; b < dist.size(); ++b) {
      if (dist[b] == 0.0 || (filter && !filter->accepts(b))) continue;
      mass += dist[b];
      mean += dist[b] * diagonal_value(g.observable, b);
    }
    if (mass < 1e-14) throw std::domain_error("estimate_energy: postselection discarded every outcome of group " + g.label);
    out.energy += mean / mass;
    retained_sum += mass;
  }
  out.retained_fraction = plan.groups.empty() ? 1.0 : retained_sum / static_cast<double>(plan.groups.size());
  return out;
}

std::complex<double> pauli_expectation(const PauliString& p, const DensityMatrix& rho) {
  // Tr(rho Q) = sum_c <c|rho Q|c>, Q|c> = i^y (-1)^{|c & z|} |c ^ x>.
  static const Complex kPhases[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex base = kPhases[p.y_count() % 4];
  const auto& m = rho.matrix();
  const auto dim = static_cast<std::uint64_t>(m.rows());
  Complex sum = 0.0;
  for (std::uint64_t c = 0; c < dim; ++c) {
    const double s = (std::popcount(c & p.z_mask()) & 1) ? -1.0 : 1.0;
    sum += s * m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c ^ p.x_mask()));
  }
  return base * sum;
}

double pauli_energy(const QubitOperator& h, const DensityMatrix& rho, double p_readout) {
  double e = h.constant();
  for (const auto& [p, c] : h.terms()) e += c * std::pow(1.0 - 2.0 * p_readout, p.weight()) * pauli_expectation(p, rho).real();
  return e;
}

NoisyEstimate parity_projected_energy(const QubitOperator& h, const DensityMatrix& rho, const PostselectionFilter& target,
                                      double p_readout) {
  const int m = target.n_spatial;
  if (rho.n_qubits() != 2 * m) throw std::invalid_argument("parity_projected_energy: register is not 2M qubits");
  const std::uint64_t up = (std::uint64_t{1} << m) - 1;
  // P = 1/4 sum_A s_A Pi_A over A in {none, up, down, both}.
  const PauliString parities[4] = {PauliString(), PauliString::z_string(up), PauliString::z_string(up << m),
                                   PauliString::z_string(up | (up << m))};
  const double s_up = (target.n_up % 2 == 0) ? 1.0 : -1.0;
  const double s_down = (target.n_down % 2 == 0) ? 1.0 : -1.0;
  const double signs[4] = {1.0, s_up, s_down, s_up * s_down};
  const double damp = 1.0 - 2.0 * p_readout;
  auto measured = [&](const PauliString& q) { return std::pow(damp, q.weight()) * pauli_expectation(q, rho); };

  Complex norm = 0.0, numerator = 0.0;
  for (int a = 0; a < 4; ++a) {
    norm += 0.25 * signs[a] * measured(parities[a]);
    numerator += 0.25 * signs[a] * h.constant() * measured(parities[a]);
    for (const auto& [p, c] : h.terms()) {
      const auto [q, phase] = pauli_product(parities[a], p);
      numerator += 0.25 * signs[a] * c * phase * measured(q);
    }
  }
  if (norm.real() < 1e-12) throw std::domain_error("parity_projected_energy: state has no weight in the target parity sector");
  return {numerator.real() / norm.real(), norm.real()};
}

std::vector<GivensNetwork> random_identity_prep(int m_networks, int n_spatial, std::uint64_t seed) {
  if (m_networks < 2) throw std::invalid_argument("random_identity_prep: need at least two networks");
  std::vector<GivensNetwork> out;
  Eigen::MatrixXd product = Eigen::MatrixXd::Identity(n_spatial, n_spatial);
  for (int k = 0; k + 1 < m_networks; ++k) {
    const Eigen::MatrixXd u = random_special_orthogonal(n_spatial, derive_seed(seed, static_cast<std::uint64_t>(k)));
    out.push_back(decompose(u));
    product = u * product;  // later networks act after earlier ones
  }
  out.push_back(decompose(product.transpose()));
  return out;
}

namespace {

void apply_pauli_error(Eigen::VectorXcd& psi, int q, int which) {
  // which: 1 = X, 2 = Y, 3 = Z.
  const std::uint64_t bit = std::uint64_t{1} << q;
  const auto dim = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (which == 3) {
      if (b & bit) psi[static_cast<Eigen::Index>(b)] = -psi[static_cast<Eigen::Index>(b)];
      continue;
    }
    if (b & bit) continue;
    const auto i = static_cast<Eigen::Index>(b), j = static_cast<Eigen::Index>(b | bit);
    const Complex x = psi[i], y = psi[j];
    if (which == 1) {
      psi[i] = y;
      psi[j] = x;
    } else {  // Y|0> = i|1>, Y|1> = -i|0>
      psi[i] = Complex(0, -1) * y;
      psi[j] = Complex(0, 1) * x;
    }
  }
}

template <typename Gen>
void maybe_error(Eigen::VectorXcd& psi, int q, const NoiseModel& noise, Gen& rng) {
  if (noise.p_depol == 0.0) return;
  const double u = uniform01(rng);
  if (u >= noise.p_depol) return;
  if (noise.channel == GateChannel::kDephasing) {
    apply_pauli_error(psi, q, 3);
  } else {
    apply_pauli_error(psi, q, 1 + static_cast<int>(uniform_below(rng, 3)));
  }
}

void single_qubit(Eigen::VectorXcd& psi, int q, const Eigen::Matrix2cd& u) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(psi.size()); ++b) {
    if (b & bit) continue;
    const auto i = static_cast<Eigen::Index>(b), j = static_cast<Eigen::Index>(b | bit);
    const Complex x = psi[i], y = psi[j];
    psi[i] = u(0, 0) * x + u(0, 1) * y;
    psi[j] = u(1, 0) * x + u(1, 1) * y;
  }
}

}  // namespace

TrajectoryRecord sample_trajectories(const MeasurementPlan& plan, const Eigen::VectorXcd& psi, const NoiseModel& noise,
                                     std::size_t shots, std::uint64_t seed) {
  noise.validate();
  if (shots == 0) throw std::invalid_argument("sample_trajectories: shots must be positive");
  const int n = std::countr_zero(static_cast<std::uint64_t>(psi.size()));
  TrajectoryRecord record;
  record.samples.resize(plan.groups.size());
  Eigen::VectorXcd work;
  std::vector<double> cumulative(static_cast<std::size_t>(psi.size()));
  for (std::size_t gi = 0; gi < plan.groups.size(); ++gi) {
    const auto& g = plan.groups[gi];
    const bool noisy_gates = g.basis_change == BasisChange::kGivens && noise.p_depol > 0.0;
    auto rotate = [&](Eigen::VectorXcd& v, SplitMix64* rng) {
      if (g.basis_change == BasisChange::kGivens) {
        const int m = g.network.n_modes;
        const auto nr = g.network.rotations.size();
        for (std::size_t k = 0; k < nr; ++k) {
          const auto& r = g.network.rotations[nr - 1 - k];
          for (int offset : {0, m}) {
            apply_givens_gate(v, r.wire + offset, -r.theta);
            if (rng) {
              maybe_error(v, r.wire + offset, noise, *rng);
              maybe_error(v, r.wire + offset + 1, noise, *rng);
            }
          }
        }
      } else if (g.basis_change == BasisChange::kSingleQubit) {
        for (int q = 0; q < n; ++q) {
          const Pauli axis = g.axes.at(q);
          if (axis == Pauli::kX || axis == Pauli::kY) single_qubit(v, q, to_z_rotation(axis));
        }
      }
    };
    auto build_cumulative = [&](const Eigen::VectorXcd& v) {
      double acc = 0.0;
      for (Eigen::Index b = 0; b < v.size(); ++b) {
        acc += std::norm(v[b]);
        cumulative[static_cast<std::size_t>(b)] = acc;
      }
    };
    if (!noisy_gates) {
      work = psi;
      rotate(work, nullptr);
      build_cumulative(work);
    }
    auto& out = record.samples[gi];
    out.reserve(shots);
    for (std::size_t s = 0; s < shots; ++s) {
      SplitMix64 rng(derive_seed(seed, gi, s));
      if (noisy_gates) {
        work = psi;
        rotate(work, &rng);
        build_cumulative(work);
      }
      const double u = uniform01(rng) * cumulative.back();
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      std::uint64_t bits = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(), psi.size() - 1));
      if (noise.p_readout > 0.0)
        for (int q = 0; q < n; ++q)
          if (uniform01(rng) < noise.p_readout) bits ^= std::uint64_t{1} << q;
      out.push_back(bits);
    }
  }
  return record;
}

}  // namespace brg
