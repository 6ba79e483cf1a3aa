// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "brg/random.hpp"
#include "brg/sector.hpp"

namespace brg {

StringSpace::StringSpace(int n_orbitals, int n_particles) : n_orbitals_(n_orbitals), n_particles_(n_particles) {
  if (n_orbitals < 0 || n_orbitals > 32) throw std::invalid_argument("StringSpace: orbital count must be in [0, 32]");
  if (n_particles < 0 || n_particles > n_orbitals)
    throw std::invalid_argument("StringSpace: particle count " + std::to_string(n_particles) + " outside [0, " +
                                std::to_string(n_orbitals) + "]");
  binom_.assign(static_cast<std::size_t>(n_orbitals) + 1, std::vector<std::size_t>(static_cast<std::size_t>(n_orbitals) + 2, 0));
  for (int n = 0; n <= n_orbitals; ++n) {
    binom_[static_cast<std::size_t>(n)][0] = 1;
    for (int k = 1; k <= n; ++k)
      binom_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] =
          binom_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)] +
          (k <= n - 1 ? binom_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)] : 0);
  }
  const std::size_t count = binom_[static_cast<std::size_t>(n_orbitals)][static_cast<std::size_t>(n_particles)];
  strings_.reserve(count);
  if (n_particles == 0) {
    strings_.push_back(0);
    return;
  }
  std::uint64_t s = (std::uint64_t{1} << n_particles) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n_orbitals;
  while (s < limit) {
    strings_.push_back(s);
    const std::uint64_t c = s & (~s + 1);  // Gosper's hack: next string with equal popcount
    const std::uint64_t r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
}

std::size_t StringSpace::index(std::uint64_t s) const {
  if (std::popcount(s) != n_particles_ || (n_orbitals_ < 64 && (s >> n_orbitals_) != 0))
    throw std::out_of_range("string outside the space");
  std::size_t rank = 0;
  int k = 0;
  while (s != 0) {
    const int pos = std::countr_zero(s);
    s &= s - 1;
    ++k;
    if (pos >= k) rank += binom_[static_cast<std::size_t>(pos)][static_cast<std::size_t>(k)];
  }
  return rank;
}

SectorBasis::SectorBasis(int n_spatial, int n_up, int n_down) : up_(n_spatial, n_up), down_(n_spatial, n_down) {}

std::uint64_t SectorBasis::bitstring(std::size_t flat) const {
  const std::size_t nd = down_.size();
  return up_[flat / nd] | (down_[flat % nd] << n_spatial());
}

std::size_t SectorBasis::index(std::uint64_t bits) const {
  const int m = n_spatial();
  const std::uint64_t mask = (std::uint64_t{1} << m) - 1;
  if ((bits >> (2 * m)) != 0) throw std::out_of_range("bitstring outside the register");
  return up_.index(bits & mask) * down_.size() + down_.index((bits >> m) & mask);
}

namespace {

struct CompiledTerm {
  std::uint64_t create = 0;
  LadderSequence ops;
  double coefficient = 0.0;
};

// Apply a ladder product (rightmost first) to a bitstring; returns false if it annihilates.
bool act(const LadderSequence& ops, std::uint64_t& bits, double& sign) {
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const std::uint64_t bit = std::uint64_t{1} << it->mode;
    if (((bits & bit) != 0) == it->dagger) return false;
    if (std::popcount(bits & (bit - 1)) & 1) sign = -sign;
    bits ^= bit;
  }
  return true;
}

}  // namespace

Eigen::SparseMatrix<double, Eigen::RowMajor> sector_hamiltonian(const FermionOperator& h, const SectorBasis& basis,
                                                                 std::size_t limit) {
  const std::size_t dim = basis.dimension();
  if (dim > limit)
    throw SectorTooLargeError("sector dimension " + std::to_string(dim) + " exceeds the limit " + std::to_string(limit));
  const int m = basis.n_spatial();
  if (h.n_modes() > 2 * m) throw std::invalid_argument("sector_hamiltonian: operator acts outside 2M modes");
  const std::uint64_t up_mask = (std::uint64_t{1} << m) - 1;

  // Terms grouped by the set of modes they annihilate.
  std::unordered_map<std::uint64_t, std::vector<CompiledTerm>> by_annihilation;
  for (const auto& [ops, c] : h.terms()) {
    std::uint64_t cm = 0, am = 0;
    int nc = 0;
    for (const auto& l : ops) {
      if (l.dagger) {
        cm |= std::uint64_t{1} << l.mode;
        ++nc;
      } else {
        am |= std::uint64_t{1} << l.mode;
      }
    }
    if (ops.size() > 4 || 2 * nc != static_cast<int>(ops.size()) || std::popcount(am) != nc || std::popcount(cm) != nc)
      throw std::invalid_argument("sector_hamiltonian: operator must be normal-ordered, number-conserving and at most two-body");
    if (std::popcount(cm & up_mask) != std::popcount(am & up_mask))
      throw std::invalid_argument("sector_hamiltonian: operator does not conserve S_z in block layout");
    by_annihilation[am].push_back({cm, ops, c});
  }

  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<std::pair<std::size_t, double>> row;
  std::vector<int> occ;
  for (std::size_t col = 0; col < dim; ++col) {
    const std::uint64_t bits = basis.bitstring(col);
    row.clear();
    row.emplace_back(col, h.constant());
    occ.clear();
    for (std::uint64_t rest = bits; rest != 0; rest &= rest - 1) occ.push_back(std::countr_zero(rest));
    auto visit = [&](std::uint64_t am) {
      const auto it = by_annihilation.find(am);
      if (it == by_annihilation.end()) return;
      const std::uint64_t kept = bits & ~am;
      for (const auto& t : it->second) {
        if ((kept & t.create) != 0) continue;
        std::uint64_t out = bits;
        double sign = 1.0;
        if (!act(t.ops, out, sign)) continue;
        row.emplace_back(basis.index(out), sign * t.coefficient);
      }
    };
    for (std::size_t i = 0; i < occ.size(); ++i) {
      const std::uint64_t bi = std::uint64_t{1} << occ[i];
      visit(bi);
      for (std::size_t j = i + 1; j < occ.size(); ++j) visit(bi | (std::uint64_t{1} << occ[j]));
    }
    // Column `col` of H; H is symmetric for the Hermitian operators accepted upstream,
    // so it is stored as a row and merged before insertion.
    std::sort(row.begin(), row.end());
    for (std::size_t k = 0; k < row.size();) {
      std::size_t e = k;
      double sum = 0.0;
      while (e < row.size() && row[e].first == row[k].first) sum += row[e++].second;
      if (sum != 0.0) triplets.emplace_back(static_cast<int>(col), static_cast<int>(row[k].first), sum);
      k = e;
    }
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Eigen::VectorXd SectorState::to_dense() const {
  const int n = 2 * basis.n_spatial();
  if (n > 30) throw std::invalid_argument("SectorState::to_dense: register too large");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(Eigen::Index{1} << n);
  for (std::size_t k = 0; k < basis.dimension(); ++k)
    out[static_cast<Eigen::Index>(basis.bitstring(k))] = amplitudes[static_cast<Eigen::Index>(k)];
  return out;
}

double expectation(const Eigen::SparseMatrix<double, Eigen::RowMajor>& h, const Eigen::VectorXd& v) {
  return v.dot(h * v);
}

namespace {

void fix_phase(Eigen::VectorXd& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (v[k] < 0) v = -v;
}

EigenPair lanczos(const Eigen::SparseMatrix<double, Eigen::RowMajor>& h, const EigenOptions& options) {
  const Eigen::Index dim = h.rows();
  SplitMix64 rng(options.seed);
  Eigen::VectorXd start(dim);
  for (Eigen::Index i = 0; i < dim; ++i) start[i] = uniform01(rng) - 0.5;
  start.normalize();

  const int krylov = std::min<int>(options.max_iterations, static_cast<int>(dim));
  EigenPair best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < 20; ++restart) {
    Eigen::MatrixXd q(dim, krylov);
    std::vector<double> alpha, beta;
    q.col(0) = start;
    Eigen::VectorXd ritz;
    int k_used = 0;
    for (int k = 0; k < krylov; ++k) {
      Eigen::VectorXd w = h * q.col(k);
      const double a = q.col(k).dot(w);
      alpha.push_back(a);
      // Full reorthogonalization, applied twice for numerical safety.
      for (int pass = 0; pass < 2; ++pass) w -= q.leftCols(k + 1) * (q.leftCols(k + 1).transpose() * w);
      const double b = w.norm();
      k_used = k + 1;
      bool check = (k + 1) % 10 == 0 || k + 1 == krylov || b < 1e-12;
      if (check) {
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k + 1, k + 1);
        for (int i = 0; i <= k; ++i) {
          t(i, i) = alpha[static_cast<std::size_t>(i)];
          if (i < k) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        ritz = es.eigenvectors().col(0);
        const double estimate = std::abs(b * ritz[k]);
        if (estimate < 0.1 * options.residual_tol || b < 1e-12) break;
      }
      if (k + 1 < krylov) {
        beta.push_back(b);
        q.col(k + 1) = w / b;
      }
    }
    Eigen::VectorXd v = q.leftCols(k_used) * ritz.head(k_used);
    v.normalize();
    const Eigen::VectorXd hv = h * v;
    const double e = v.dot(hv);
    const double res = (hv - e * v).norm();
    if (res < best.residual) best = {e, v, res};
    if (res <= options.residual_tol) break;
    start = v;
  }
  return best;
}

}  // namespace

EigenPair lowest_eigenpair(const Eigen::SparseMatrix<double, Eigen::RowMajor>& h, const EigenOptions& options) {
  if (h.rows() == 0) throw std::invalid_argument("lowest_eigenpair: empty matrix");
  EigenPair out;
  if (static_cast<std::size_t>(h.rows()) <= options.dense_limit) {
    const Eigen::MatrixXd dense = Eigen::MatrixXd(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success) throw std::runtime_error("lowest_eigenpair: dense eigensolver failed");
    out.energy = es.eigenvalues()[0];
    out.vector = es.eigenvectors().col(0);
    out.residual = (dense * out.vector - out.energy * out.vector).norm();
  } else {
    out = lanczos(h, options);
    if (out.residual > 10 * options.residual_tol)
      throw std::runtime_error("lowest_eigenpair: Lanczos did not converge (residual " + std::to_string(out.residual) + ")");
  }
  fix_phase(out.vector);
  return out;
}

namespace {

void require_hermitian(const FermionOperator& h) {
  if (!is_hermitian(h, 1e-10)) throw std::invalid_argument("sector solver: Hamiltonian is not Hermitian");
}

}  // namespace

GroundState fci_ground_state(const FermionOperator& h, int n_spatial, int n_up, int n_down, const EigenOptions& options) {
  require_hermitian(h);
  SectorBasis basis(n_spatial, n_up, n_down);
  const auto mat = sector_hamiltonian(h, basis);
  const auto pair = lowest_eigenpair(mat, options);
  return {pair.energy, {basis, pair.vector}, pair.residual};
}

GroundState cisd_state(const FermionOperator& h, int n_spatial, std::uint64_t reference_bits, int n_up, int n_down,
                       const EigenOptions& options) {
  require_hermitian(h);
  SectorBasis basis(n_spatial, n_up, n_down);
  const std::size_t ref = basis.index(reference_bits);
  const auto full = sector_hamiltonian(h, basis);
  std::vector<int> keep;
  for (std::size_t k = 0; k < basis.dimension(); ++k)
    if (std::popcount(basis.bitstring(k) ^ reference_bits) <= 4) keep.push_back(static_cast<int>(k));
  std::vector<int> position(basis.dimension(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) position[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(full, keep[i]); it; ++it) {
      const int j = position[static_cast<std::size_t>(it.col())];
      if (j >= 0) trip.emplace_back(static_cast<int>(i), j, it.value());
    }
  Eigen::SparseMatrix<double, Eigen::RowMajor> sub(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(keep.size()));
  sub.setFromTriplets(trip.begin(), trip.end());
  auto pair = lowest_eigenpair(sub, options);
  Eigen::VectorXd amplitudes = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.dimension()));
  for (std::size_t i = 0; i < keep.size(); ++i) amplitudes[keep[i]] = pair.vector[static_cast<Eigen::Index>(i)];
  if (amplitudes[static_cast<Eigen::Index>(ref)] < 0) amplitudes = -amplitudes;
  return {pair.energy, {basis, amplitudes}, pair.residual};
}

std::uint64_t aufbau_bits(int n_spatial, int n_up, int n_down) {
  if (n_up < 0 || n_down < 0 || n_up > n_spatial || n_down > n_spatial)
    throw std::invalid_argument("aufbau_bits: electron counts outside the orbital space");
  const std::uint64_t up = (std::uint64_t{1} << n_up) - 1;
  const std::uint64_t down = (std::uint64_t{1} << n_down) - 1;
  return up | (down << n_spatial);
}

SectorState determinant_state(int n_spatial, std::uint64_t bits) {
  const std::uint64_t mask = (std::uint64_t{1} << n_spatial) - 1;
  SectorBasis basis(n_spatial, std::popcount(bits & mask), std::popcount((bits >> n_spatial) & mask));
  Eigen::VectorXd amplitudes = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.dimension()));
  amplitudes[static_cast<Eigen::Index>(basis.index(bits))] = 1.0;
  return {basis, amplitudes};
}

void apply_network(const GivensNetwork& network, SectorState& state, bool dagger) {
  const int m = state.basis.n_spatial();
  if (network.n_modes != m) throw std::invalid_argument("apply_network: network and state disagree on orbital count");
  const std::size_t nu = state.basis.up().size();
  const std::size_t nd = state.basis.down().size();
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> amp(
      state.amplitudes.data(), static_cast<Eigen::Index>(nu), static_cast<Eigen::Index>(nd));
  // Pairs (string with q occupied and q+1 empty, partner) per wire and spin space.
  auto pairs_for = [](const StringSpace& space, int q) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
    const std::uint64_t lo = std::uint64_t{1} << q, hi = lo << 1;
    for (std::size_t i = 0; i < space.size(); ++i) {
      const std::uint64_t s = space[i];
      if ((s & lo) && !(s & hi))
        out.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(space.index(s ^ lo ^ hi)));
    }
    return out;
  };
  std::vector<std::vector<std::pair<Eigen::Index, Eigen::Index>>> up_pairs, down_pairs;
  for (int q = 0; q + 1 < m; ++q) {
    up_pairs.push_back(pairs_for(state.basis.up(), q));
    down_pairs.push_back(pairs_for(state.basis.down(), q));
  }
  const auto n = network.rotations.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& g = dagger ? network.rotations[n - 1 - k] : network.rotations[k];
    const double theta = dagger ? -g.theta : g.theta;
    const double c = std::cos(theta), s = std::sin(theta);
    for (const auto& [i, j] : up_pairs[static_cast<std::size_t>(g.wire)]) {
      const Eigen::RowVectorXd x = amp.row(i), y = amp.row(j);
      amp.row(i) = c * x - s * y;
      amp.row(j) = s * x + c * y;
    }
    for (const auto& [i, j] : down_pairs[static_cast<std::size_t>(g.wire)]) {
      const Eigen::VectorXd x = amp.col(i), y = amp.col(j);
      amp.col(i) = c * x - s * y;
      amp.col(j) = s * x + c * y;
    }
  }
}

}  // namespace brg
