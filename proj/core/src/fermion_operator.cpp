// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

#include "brg/fermion.hpp"

namespace brg {

void FermionOperator::add_term(LadderSequence ops, double coefficient) {
  if (coefficient == 0.0) return;
  if (ops.empty()) {
    constant_ += coefficient;
    return;
  }
  for (const auto& l : ops)
    if (l.mode < 0) throw std::invalid_argument("FermionOperator: negative mode index");
  auto [it, inserted] = terms_.emplace(std::move(ops), coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
  }
}

int FermionOperator::n_modes() const {
  int n = 0;
  for (const auto& [ops, _] : terms_)
    for (const auto& l : ops) n = std::max(n, l.mode + 1);
  return n;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
  constant_ += other.constant_;
  for (const auto& [ops, c] : other.terms_) add_term(ops, c);
  return *this;
}

FermionOperator& FermionOperator::operator*=(double scalar) {
  constant_ *= scalar;
  if (scalar == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [_, c] : terms_) c *= scalar;
  return *this;
}

FermionOperator operator*(const FermionOperator& a, const FermionOperator& b) {
  FermionOperator out(a.constant_ * b.constant_);
  for (const auto& [ops, c] : a.terms_) out.add_term(ops, c * b.constant_);
  for (const auto& [ops, c] : b.terms_) out.add_term(ops, c * a.constant_);
  for (const auto& [oa, ca] : a.terms_)
    for (const auto& [ob, cb] : b.terms_) {
      LadderSequence joined = oa;
      joined.insert(joined.end(), ob.begin(), ob.end());
      out.add_term(std::move(joined), ca * cb);
    }
  return out;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out(constant_);
  for (const auto& [ops, c] : terms_) {
    LadderSequence rev(ops.rbegin(), ops.rend());
    for (auto& l : rev) l.dagger = !l.dagger;
    out.add_term(std::move(rev), c);
  }
  return out;
}

void FermionOperator::prune(double threshold) {
  std::erase_if(terms_, [&](const auto& kv) { return std::abs(kv.second) <= threshold; });
  if (std::abs(constant_) <= threshold) constant_ = 0.0;
}

namespace {

// Canonical precedence: creators first, then higher mode first.
bool precedes(const Ladder& a, const Ladder& b) {
  if (a.dagger != b.dagger) return a.dagger;
  return a.mode > b.mode;
}

}  // namespace

FermionOperator normal_order(const FermionOperator& op) {
  FermionOperator out(op.constant());
  std::vector<std::pair<LadderSequence, double>> work(op.terms().begin(), op.terms().end());
  while (!work.empty()) {
    auto [ops, coef] = std::move(work.back());
    work.pop_back();
    bool zero = false;
    bool changed = true;
    // Bubble sort; each annihilator/creator swap on the same mode spawns a contraction.
    while (changed && !zero) {
      changed = false;
      for (std::size_t i = 0; i + 1 < ops.size(); ++i) {
        const Ladder a = ops[i];
        const Ladder b = ops[i + 1];
        if (a.mode == b.mode && a.dagger == b.dagger) {
          zero = true;
          break;
        }
        if (precedes(b, a)) {
          if (!a.dagger && b.dagger && a.mode == b.mode) {
            LadderSequence contracted;
            contracted.reserve(ops.size() - 2);
            contracted.insert(contracted.end(), ops.begin(), ops.begin() + static_cast<std::ptrdiff_t>(i));
            contracted.insert(contracted.end(), ops.begin() + static_cast<std::ptrdiff_t>(i) + 2, ops.end());
            work.emplace_back(std::move(contracted), coef);
          }
          std::swap(ops[i], ops[i + 1]);
          coef = -coef;
          changed = true;
        }
      }
    }
    if (!zero) out.add_term(std::move(ops), coef);
  }
  out.prune();
  return out;
}

double max_difference(const FermionOperator& a, const FermionOperator& b) {
  double worst = std::abs(a.constant() - b.constant());
  for (const auto& [ops, c] : a.terms()) {
    const auto it = b.terms().find(ops);
    worst = std::max(worst, std::abs(c - (it == b.terms().end() ? 0.0 : it->second)));
  }
  for (const auto& [ops, c] : b.terms())
    if (!a.terms().contains(ops)) worst = std::max(worst, std::abs(c));
  return worst;
}

bool is_hermitian(const FermionOperator& op, double tol) {
  const FermionOperator a = normal_order(op);
  return max_difference(a, normal_order(a.adjoint())) <= tol;
}

SpinLayout parse_spin_layout(std::string_view token) {
  if (token == "block") return SpinLayout::kBlock;
  if (token == "interleaved") return SpinLayout::kInterleaved;
  throw std::invalid_argument("unknown spin layout '" + std::string(token) + "' (expected block or interleaved)");
}

std::string_view to_string(SpinLayout layout) {
  return layout == SpinLayout::kBlock ? "block" : "interleaved";
}

int partition_class(const LadderSequence& term) {
  int n_create = 0;
  for (const auto& l : term) n_create += l.dagger ? 1 : 0;
  const int n_annihilate = static_cast<int>(term.size()) - n_create;
  if (n_create != n_annihilate || term.empty())
    throw std::invalid_argument("partition_class: term is not a number-conserving product");
  if (term.size() > 4) throw std::invalid_argument("partition_class: terms beyond two-body are not classified");
  std::set<int> modes;
  for (const auto& l : term) modes.insert(l.mode);
  if (term.size() == 2) return modes.size() == 1 ? 0 : 1;
  return static_cast<int>(modes.size());  // 2 -> III, 3 -> IV, 4 -> V
}

namespace {

// Key of the conjugate of a normal-ordered term: creator and annihilator sets swap.
LadderSequence conjugate_key(const LadderSequence& term) {
  LadderSequence out;
  for (const auto& l : term)
    if (!l.dagger) out.push_back({l.mode, true});
  for (const auto& l : term)
    if (l.dagger) out.push_back({l.mode, false});
  return out;
}

}  // namespace

PartitionSums classify_partitions(const FermionOperator& op) {
  PartitionSums sums;
  for (const auto& [ops, c] : op.terms()) {
    const int cls = partition_class(ops);
    const LadderSequence conj = conjugate_key(ops);
    if (conj < ops && op.terms().contains(conj)) continue;
    sums.classes[static_cast<std::size_t>(cls)] += std::abs(c);
  }
  return sums;
}

std::array<FermionOperator, 5> split_partitions(const FermionOperator& op) {
  std::array<FermionOperator, 5> out;
  for (const auto& [ops, c] : op.terms()) out[static_cast<std::size_t>(partition_class(ops))].add_term(ops, c);
  return out;
}

Eigen::MatrixXd fock_matrix(const FermionOperator& op, int n_modes) {
  if (n_modes < 0 || n_modes > 14) throw std::invalid_argument("fock_matrix: mode count must be in [0, 14]");
  if (op.n_modes() > n_modes) throw std::invalid_argument("fock_matrix: operator acts on more modes than requested");
  const std::uint64_t dim = std::uint64_t{1} << n_modes;
  Eigen::MatrixXd m = op.constant() * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& [ops, c] : op.terms()) {
    for (std::uint64_t col = 0; col < dim; ++col) {
      std::uint64_t state = col;
      double sign = 1.0;
      bool alive = true;
      for (auto it = ops.rbegin(); it != ops.rend() && alive; ++it) {
        const std::uint64_t bit = std::uint64_t{1} << it->mode;
        const bool occupied = (state & bit) != 0;
        if (occupied == it->dagger) {
          alive = false;
          break;
        }
        if (std::popcount(state & (bit - 1)) % 2 == 1) sign = -sign;
        state ^= bit;
      }
      if (alive) m(static_cast<Eigen::Index>(state), static_cast<Eigen::Index>(col)) += c * sign;
    }
  }
  return m;
}

FermionOperator number_operator(int n_modes) {
  FermionOperator n;
  for (int p = 0; p < n_modes; ++p) n.add_term({create(p), annihilate(p)}, 1.0);
  return n;
}

FermionOperator sz_operator(int n_spatial, SpinLayout layout) {
  FermionOperator sz;
  for (int p = 0; p < n_spatial; ++p) {
    const int up = spin_orbital(p, 0, n_spatial, layout);
    const int down = spin_orbital(p, 1, n_spatial, layout);
    sz.add_term({create(up), annihilate(up)}, 0.5);
    sz.add_term({create(down), annihilate(down)}, -0.5);
  }
  return sz;
}

}  // namespace brg
