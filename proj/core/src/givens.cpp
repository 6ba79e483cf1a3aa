// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "brg/givens.hpp"

namespace brg {

namespace {

constexpr double kPruneAngle = 1e-14;

double canonical_angle(double theta) {
  double t = std::remainder(theta, 2.0 * std::numbers::pi);  // [-pi, pi]
  if (t <= -std::numbers::pi) t += 2.0 * std::numbers::pi;
  return t;
}

// Rows (a, a+1) <- T(theta) rows.
void rotate_rows(Eigen::MatrixXd& m, int a, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double x = m(a, j), y = m(a + 1, j);
    m(a, j) = c * x - s * y;
    m(a + 1, j) = s * x + c * y;
  }
}

// Columns (a, a+1) <- columns times T(theta).
void rotate_cols(Eigen::MatrixXd& m, int a, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double x = m(i, a), y = m(i, a + 1);
    m(i, a) = c * x + s * y;
    m(i, a + 1) = -s * x + c * y;
  }
}

}  // namespace

Eigen::MatrixXd givens_matrix(int n_modes, const GivensRotation& g) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(n_modes, n_modes);
  const double c = std::cos(g.theta), s = std::sin(g.theta);
  t(g.wire, g.wire) = c;
  t(g.wire, g.wire + 1) = -s;
  t(g.wire + 1, g.wire) = s;
  t(g.wire + 1, g.wire + 1) = c;
  return t;
}

Eigen::MatrixXd GivensNetwork::matrix() const {
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(n_modes, n_modes);
  for (const auto& g : rotations) rotate_rows(u, g.wire, g.theta);  // u <- T u
  return u;
}

GivensNetwork GivensNetwork::inverse() const {
  GivensNetwork out;
  out.n_modes = n_modes;
  for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) out.rotations.push_back({it->wire, -it->theta});
  out.layers = schedule_layers(n_modes, out.rotations);
  return out;
}

std::vector<std::vector<int>> schedule_layers(int n_modes, const std::vector<GivensRotation>& rotations) {
  std::vector<int> free_at(static_cast<std::size_t>(std::max(n_modes, 0)), 0);
  std::vector<std::vector<int>> layers;
  for (std::size_t k = 0; k < rotations.size(); ++k) {
    const int w = rotations[k].wire;
    if (w < 0 || w + 1 >= n_modes) throw std::out_of_range("Givens rotation wire outside the register");
    const auto uw = static_cast<std::size_t>(w);
    const int layer = std::max(free_at[uw], free_at[uw + 1]);
    if (layer >= static_cast<int>(layers.size())) layers.resize(static_cast<std::size_t>(layer) + 1);
    layers[static_cast<std::size_t>(layer)].push_back(static_cast<int>(k));
    free_at[uw] = free_at[uw + 1] = layer + 1;
  }
  return layers;
}

GivensNetwork decompose(const Eigen::MatrixXd& u) {
  const int m = static_cast<int>(u.rows());
  if (u.cols() != m) throw std::invalid_argument("decompose: matrix is not square");
  GivensNetwork net;
  net.n_modes = m;
  if (m == 0) return net;
  const double defect = (u.transpose() * u - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (defect > 1e-8) throw std::invalid_argument("decompose: matrix is not orthogonal (defect " + std::to_string(defect) + ")");
  if (u.determinant() < 0) throw std::invalid_argument("decompose: determinant is -1; flip one column first");

  // Null the strictly lower triangle along anti-diagonals, alternating between right
  // (column) and left (row) rotations: D = L_k..L_1 U R_1..R_r.
  Eigen::MatrixXd work = u;
  std::vector<GivensRotation> left, right;
  for (int i = 1; i < m; ++i) {
    if (i % 2 == 1) {
      for (int j = 0; j < i; ++j) {
        const int row = m - 1 - j;
        const int col = i - j - 1;
        const double theta = std::atan2(-work(row, col), work(row, col + 1));
        rotate_cols(work, col, theta);
        right.push_back({col, theta});
      }
    } else {
      for (int j = 1; j <= i; ++j) {
        const int row = m + j - i - 1;
        const int col = j - 1;
        const int a = row - 1;
        const double theta = std::atan2(-work(row, col), work(a, col));
        rotate_rows(work, a, theta);
        left.push_back({a, theta});
      }
    }
  }
  std::vector<double> d(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) d[static_cast<std::size_t>(k)] = work(k, k) >= 0 ? 1.0 : -1.0;

  // U = L_1^T..L_k^T D R_r^T..R_1^T. Move D to the right end with D T(t) D = T(d_a d_{a+1} t).
  std::vector<GivensRotation> product;  // left-to-right matrix factors
  for (const auto& g : left) product.push_back({g.wire, -g.theta});
  for (auto it = right.rbegin(); it != right.rend(); ++it) {
    const auto a = static_cast<std::size_t>(it->wire);
    product.push_back({it->wire, -it->theta * d[a] * d[a + 1]});
  }
  // Absorb D: T(t) diag(-1,-1 on a,a+1) = T(t + pi); later factors touching a or a+1 change sign.
  for (int a = 0; a + 1 < m; ++a) {
    if (d[static_cast<std::size_t>(a)] > 0) continue;
    int last = -1;
    for (int k = static_cast<int>(product.size()) - 1; k >= 0; --k)
      if (product[static_cast<std::size_t>(k)].wire == a) {
        last = k;
        break;
      }
    if (last < 0) {
      product.push_back({a, std::numbers::pi});
    } else {
      product[static_cast<std::size_t>(last)].theta += std::numbers::pi;
      for (std::size_t k = static_cast<std::size_t>(last) + 1; k < product.size(); ++k)
        if (product[k].wire == a - 1 || product[k].wire == a + 1) product[k].theta = -product[k].theta;
    }
    d[static_cast<std::size_t>(a)] = -d[static_cast<std::size_t>(a)];
    d[static_cast<std::size_t>(a) + 1] = -d[static_cast<std::size_t>(a) + 1];
  }
  // Application order is the reverse of the matrix product order.
  for (auto it = product.rbegin(); it != product.rend(); ++it) {
    const double theta = canonical_angle(it->theta);
    if (std::abs(theta) < kPruneAngle) continue;
    net.rotations.push_back({it->wire, theta});
  }
  net.layers = schedule_layers(m, net.rotations);
  const double err = (net.matrix() - u).cwiseAbs().maxCoeff();
  if (err > 1e-9) throw std::runtime_error("decompose: reconstruction error " + std::to_string(err));
  return net;
}

SpinCircuitMetrics spin_duplicate(const GivensNetwork& network) {
  return {2 * static_cast<int>(network.rotations.size()), network.depth()};
}

namespace {

template <typename Vec>
void gate_impl(Vec& state, int q, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const std::uint64_t lo = std::uint64_t{1} << q;
  const std::uint64_t hi = lo << 1;
  const auto dim = static_cast<std::uint64_t>(state.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    if ((b & lo) == 0 || (b & hi) != 0) continue;  // b has q occupied, q+1 empty
    const auto i = static_cast<Eigen::Index>(b);
    const auto j = static_cast<Eigen::Index>(b ^ lo ^ hi);
    const auto x = state[i];
    const auto y = state[j];
    state[i] = c * x - s * y;
    state[j] = s * x + c * y;
  }
}

template <typename Vec>
void network_impl(const GivensNetwork& network, Vec& state, bool dagger) {
  const int m = network.n_modes;
  if (state.size() != (Eigen::Index{1} << (2 * m)))
    throw std::invalid_argument("apply_to_statevector: state size does not match 2^(2M)");
  const auto n = network.rotations.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& g = dagger ? network.rotations[n - 1 - k] : network.rotations[k];
    const double theta = dagger ? -g.theta : g.theta;
    gate_impl(state, g.wire, theta);
    gate_impl(state, g.wire + m, theta);
  }
}

}  // namespace

void apply_givens_gate(Eigen::VectorXd& state, int q, double theta) { gate_impl(state, q, theta); }
void apply_givens_gate(Eigen::VectorXcd& state, int q, double theta) { gate_impl(state, q, theta); }

void apply_to_statevector(const GivensNetwork& network, Eigen::VectorXcd& state, bool dagger) {
  network_impl(network, state, dagger);
}
void apply_to_statevector(const GivensNetwork& network, Eigen::VectorXd& state, bool dagger) {
  network_impl(network, state, dagger);
}

std::string export_circuit(const GivensNetwork& network) {
  std::string out;
  char buf[96];
  for (std::size_t l = 0; l < network.layers.size(); ++l) {
    if (l > 0) out += '\n';
    for (int k : network.layers[l]) {
      const auto& g = network.rotations[static_cast<std::size_t>(k)];
      std::snprintf(buf, sizeof(buf), "givens %d %d %.17g\n", g.wire, g.wire + 1, g.theta);
      out += buf;
    }
  }
  return out;
}

}  // namespace brg

#include "brg/random.hpp"

namespace brg {

Eigen::MatrixXd random_special_orthogonal(int m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::MatrixXd a(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) a(i, j) = standard_normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  if (m > 0 && q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

}  // namespace brg
