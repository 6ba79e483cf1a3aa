// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "brg/pauli.hpp"

namespace brg {

char to_char(Pauli p) {
  constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

namespace {

void check_qubit(int qubit) {
  if (qubit < 0 || qubit >= kMaxQubits) throw std::out_of_range("qubit index " + std::to_string(qubit) + " outside [0, 64)");
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'X': case 'x': return Pauli::kX;
    case 'Y': case 'y': return Pauli::kY;
    case 'Z': case 'z': return Pauli::kZ;
    default: throw std::invalid_argument(std::string("unknown Pauli axis '") + c + "'");
  }
}

}  // namespace

PauliString::PauliString(std::initializer_list<std::pair<int, Pauli>> axes) {
  for (const auto& [q, p] : axes) set(q, p);
}

Pauli PauliString::at(int qubit) const {
  check_qubit(qubit);
  const bool x = (x_ >> qubit) & 1U;
  const bool z = (z_ >> qubit) & 1U;
  if (x && z) return Pauli::kY;
  if (x) return Pauli::kX;
  if (z) return Pauli::kZ;
  return Pauli::kI;
}

void PauliString::set(int qubit, Pauli p) {
  check_qubit(qubit);
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  x_ &= ~bit;
  z_ &= ~bit;
  if (p == Pauli::kX || p == Pauli::kY) x_ |= bit;
  if (p == Pauli::kZ || p == Pauli::kY) z_ |= bit;
}

std::string PauliString::label() const {
  std::string out;
  std::uint64_t rest = support();
  while (rest != 0) {
    const int q = std::countr_zero(rest);
    rest &= rest - 1;
    if (!out.empty()) out += ' ';
    out += to_char(at(q));
    out += std::to_string(q);
  }
  return out;
}

PauliString PauliString::parse(std::string_view label) {
  PauliString out;
  std::size_t i = 0;
  while (i < label.size()) {
    if (label[i] == ' ' || label[i] == '\t') {
      ++i;
      continue;
    }
    const Pauli p = pauli_from_char(label[i]);
    ++i;
    int q = -1;
    const auto [ptr, ec] = std::from_chars(label.data() + i, label.data() + label.size(), q);
    if (ec != std::errc{}) throw std::invalid_argument("Pauli label '" + std::string(label) + "': missing qubit index");
    i = static_cast<std::size_t>(ptr - label.data());
    if (out.at(q) != Pauli::kI) throw std::invalid_argument("Pauli label '" + std::string(label) + "': repeated qubit");
    out.set(q, p);
  }
  return out;
}

int pauli_product_phase(const PauliString& a, const PauliString& b) {
  const std::uint64_t xr = a.x_mask() ^ b.x_mask();
  const std::uint64_t zr = a.z_mask() ^ b.z_mask();
  const int k = a.y_count() + b.y_count() - std::popcount(xr & zr) + 2 * std::popcount(a.z_mask() & b.x_mask());
  return ((k % 4) + 4) % 4;
}

std::pair<PauliString, std::complex<double>> pauli_product(const PauliString& a, const PauliString& b) {
  static const std::complex<double> kPhases[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {PauliString(a.x_mask() ^ b.x_mask(), a.z_mask() ^ b.z_mask()), kPhases[pauli_product_phase(a, b)]};
}

void QubitOperator::add_term(const PauliString& p, double coefficient) {
  if (coefficient == 0.0) return;
  if (p.is_identity()) {
    constant_ += coefficient;
    return;
  }
  auto [it, inserted] = terms_.emplace(p, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double QubitOperator::coefficient(const PauliString& p) const {
  if (p.is_identity()) return constant_;
  const auto it = terms_.find(p);
  return it == terms_.end() ? 0.0 : it->second;
}

int QubitOperator::n_qubits() const {
  int n = 0;
  for (const auto& [p, _] : terms_) n = std::max(n, p.extent());
  return n;
}

QubitOperator& QubitOperator::operator+=(const QubitOperator& other) {
  constant_ += other.constant_;
  for (const auto& [p, c] : other.terms_) add_term(p, c);
  return *this;
}

QubitOperator& QubitOperator::operator*=(double scalar) {
  constant_ *= scalar;
  if (scalar == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [_, c] : terms_) c *= scalar;
  return *this;
}

void QubitOperator::prune(double threshold) {
  std::erase_if(terms_, [&](const auto& kv) { return std::abs(kv.second) <= threshold; });
  if (std::abs(constant_) <= threshold) constant_ = 0.0;
}

double QubitOperator::l1_norm() const {
  double sum = 0.0;
  for (const auto& [_, c] : terms_) sum += std::abs(c);
  return sum;
}

std::string QubitOperator::to_text() const {
  std::vector<std::pair<std::string, double>> lines;
  lines.reserve(terms_.size() + 1);
  if (constant_ != 0.0) lines.emplace_back("", constant_);
  for (const auto& [p, c] : terms_) lines.emplace_back(p.label(), c);
  std::sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out;
  char buf[40];
  for (const auto& [label, c] : lines) {
    std::snprintf(buf, sizeof(buf), "%.17g", c);
    out += buf;
    out += " [";
    out += label;
    out += "]\n";
  }
  return out;
}

QubitOperator QubitOperator::parse_text(std::string_view text) {
  QubitOperator out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto open = line.find('[');
    const auto close = line.find(']');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw std::invalid_argument("qubit operator line " + std::to_string(line_no) + ": expected `coeff [label]`");
    double c = 0.0;
    try {
      c = std::stod(line.substr(first, open - first));
    } catch (const std::exception&) {
      throw std::invalid_argument("qubit operator line " + std::to_string(line_no) + ": bad coefficient");
    }
    try {
      out.add_term(PauliString::parse(std::string_view(line).substr(open + 1, close - open - 1)), c);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("qubit operator line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

double max_difference(const QubitOperator& a, const QubitOperator& b) {
  double worst = std::abs(a.constant() - b.constant());
  for (const auto& [p, c] : a.terms()) worst = std::max(worst, std::abs(c - b.coefficient(p)));
  for (const auto& [p, c] : b.terms())
    if (!a.terms().contains(p)) worst = std::max(worst, std::abs(c));
  return worst;
}

namespace {

std::complex<double> i_power(int k) {
  static const std::complex<double> kPhases[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPhases[((k % 4) + 4) % 4];
}

void check_dense_size(int n_qubits) {
  if (n_qubits < 0 || n_qubits > 14) throw std::invalid_argument("dense_matrix: qubit count must be in [0, 14]");
}

}  // namespace

Eigen::MatrixXcd dense_matrix(const PauliString& p, int n_qubits) {
  check_dense_size(n_qubits);
  if (p.extent() > n_qubits) throw std::invalid_argument("dense_matrix: string acts outside the register");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const std::complex<double> base = i_power(p.y_count());
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(dim); ++b) {
    const double sign = (std::popcount(b & p.z_mask()) % 2 == 0) ? 1.0 : -1.0;
    m(static_cast<Eigen::Index>(b ^ p.x_mask()), static_cast<Eigen::Index>(b)) = base * sign;
  }
  return m;
}

Eigen::MatrixXcd dense_matrix(const QubitOperator& op, int n_qubits) {
  check_dense_size(n_qubits);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd m = op.constant() * Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& [p, c] : op.terms()) m += c * dense_matrix(p, n_qubits);
  return m;
}

void apply_pauli_accumulate(const PauliString& p, double coefficient, const Eigen::VectorXd& psi, Eigen::VectorXd& out) {
  if (p.y_count() % 2 != 0) throw std::invalid_argument("apply_pauli_accumulate: odd-Y string has no real action");
  const double base = (p.y_count() % 4 == 0) ? coefficient : -coefficient;
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const auto dim = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double a = psi[static_cast<Eigen::Index>(b)];
    if (a == 0.0) continue;
    const double s = (std::popcount(b & z) & 1) ? -base : base;
    out[static_cast<Eigen::Index>(b ^ x)] += s * a;
  }
}

double pauli_expectation(const PauliString& p, const Eigen::VectorXd& psi) {
  if (p.y_count() % 2 != 0) return 0.0;
  const double base = (p.y_count() % 4 == 0) ? 1.0 : -1.0;
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const auto dim = static_cast<std::uint64_t>(psi.size());
  double sum = 0.0;
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double a = psi[static_cast<Eigen::Index>(b)];
    if (a == 0.0) continue;
    const double s = (std::popcount(b & z) & 1) ? -1.0 : 1.0;
    sum += s * a * psi[static_cast<Eigen::Index>(b ^ x)];
  }
  return base * sum;
}

}  // namespace brg
