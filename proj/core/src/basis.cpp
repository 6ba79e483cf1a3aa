// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "brg/integrals.hpp"

namespace brg {

namespace {

#include "basis_data.inc"

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
  return out;
}

int atomic_number(std::string_view symbol) {
  static const std::map<std::string, int> table = {{"H", 1},  {"HE", 2}, {"LI", 3}, {"BE", 4}, {"B", 5},
                                                   {"C", 6},  {"N", 7},  {"O", 8},  {"F", 9},  {"NE", 10}};
  const auto it = table.find(upper(symbol));
  if (it == table.end()) throw std::invalid_argument("unknown element symbol '" + std::string(symbol) + "'");
  return it->second;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

double to_double(const std::string& tok, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": expected a number, got '" + tok + "'");
  }
}

// Overlap of two normalized s primitives centered at a and b.
double primitive_norm(double alpha) { return std::pow(2.0 * alpha / std::numbers::pi, 0.75); }

}  // namespace

int Geometry::n_electrons() const {
  int z = 0;
  for (const auto& atom : atoms) z += atomic_number(atom.symbol);
  return z - charge;
}

double Geometry::nuclear_repulsion() const {
  double e = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      e += atomic_number(atoms[i].symbol) * atomic_number(atoms[j].symbol) /
           (atoms[i].position - atoms[j].position).norm();
  return e;
}

Geometry hydrogen_chain(int n, double spacing_angstrom) {
  if (n < 1) throw std::invalid_argument("hydrogen_chain: need at least one atom");
  if (!(spacing_angstrom > 0.0) || !std::isfinite(spacing_angstrom))
    throw std::invalid_argument("hydrogen_chain: spacing must be positive");
  Geometry g;
  for (int i = 0; i < n; ++i)
    g.atoms.push_back({"H", Eigen::Vector3d(0.0, 0.0, i * spacing_angstrom * kBohrPerAngstrom)});
  g.multiplicity = (n % 2 == 0) ? 1 : 2;
  return g;
}

Geometry parse_xyz(std::string_view text) {
  std::istringstream in{std::string(text)};
  Geometry g;
  bool have_header = false;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.size() != 2)
        throw std::invalid_argument("line " + std::to_string(line_no) + ": expected '<charge> <multiplicity>'");
      g.charge = static_cast<int>(to_double(toks[0], line_no));
      g.multiplicity = static_cast<int>(to_double(toks[1], line_no));
      have_header = true;
      continue;
    }
    if (toks.size() != 4)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected '<element> <x> <y> <z>'");
    atomic_number(toks[0]);
    Eigen::Vector3d pos(to_double(toks[1], line_no), to_double(toks[2], line_no), to_double(toks[3], line_no));
    if (!pos.allFinite()) throw std::invalid_argument("line " + std::to_string(line_no) + ": non-finite position");
    g.atoms.push_back({toks[0], pos * kBohrPerAngstrom});
  }
  if (!have_header) throw std::invalid_argument("xyz: missing charge/multiplicity header");
  if (g.atoms.empty()) throw std::invalid_argument("xyz: no atoms");
  return g;
}

ContractedShell::ContractedShell(Eigen::Vector3d c, std::vector<double> exps, std::vector<double> coefs)
    : center(std::move(c)), exponents(std::move(exps)), coefficients(std::move(coefs)) {
  if (exponents.empty() || exponents.size() != coefficients.size())
    throw std::invalid_argument("ContractedShell: exponent/coefficient count mismatch");
  for (double a : exponents)
    if (!(a > 0.0)) throw std::invalid_argument("ContractedShell: exponents must be positive");
  const double s = self_overlap();
  for (double& coef : coefficients) coef /= std::sqrt(s);
}

double ContractedShell::self_overlap() const {
  double s = 0.0;
  for (std::size_t i = 0; i < exponents.size(); ++i)
    for (std::size_t j = 0; j < exponents.size(); ++j) {
      const double p = exponents[i] + exponents[j];
      s += coefficients[i] * coefficients[j] * primitive_norm(exponents[i]) * primitive_norm(exponents[j]) *
           std::pow(std::numbers::pi / p, 1.5);
    }
  return s;
}

BasisLibrary BasisLibrary::parse(std::string_view text) {
  BasisLibrary lib;
  std::istringstream in{std::string(text)};
  std::string basis;
  std::string element;
  std::size_t line_no = 0;
  std::vector<std::string> toks;
  auto next = [&]() -> bool {
    for (std::string line; std::getline(in, line);) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      toks = split_ws(line);
      if (!toks.empty()) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("basis table line " + std::to_string(line_no) + ": " + msg);
  };
  while (next()) {
    if (toks[0] == "basis") {
      if (toks.size() != 2) fail("expected 'basis <name>'");
      basis = upper(toks[1]);
    } else if (toks[0] == "element") {
      if (basis.empty()) fail("element before basis");
      if (toks.size() != 3) fail("expected 'element <symbol> <shell count>'");
      element = upper(toks[1]);
      const int n_shells = static_cast<int>(to_double(toks[2], line_no));
      auto& shells = lib.tables_[basis][element];
      for (int k = 0; k < n_shells; ++k) {
        if (!next() || toks[0] != "shell" || toks.size() != 3) fail("expected 'shell <l> <primitive count>'");
        if (toks[1] != "s" && toks[1] != "S") fail("only s shells are supported");
        const int n_prim = static_cast<int>(to_double(toks[2], line_no));
        ShellData shell;
        for (int i = 0; i < n_prim; ++i) {
          if (!next() || toks.size() != 2) fail("expected '<exponent> <coefficient>'");
          shell.exponents.push_back(to_double(toks[0], line_no));
          shell.coefficients.push_back(to_double(toks[1], line_no));
        }
        shells.push_back(std::move(shell));
      }
    } else {
      fail("unexpected token '" + toks[0] + "'");
    }
  }
  return lib;
}

const BasisLibrary& BasisLibrary::bundled() {
  static const BasisLibrary lib = parse(kBundledBasisText);
  return lib;
}

std::vector<ContractedShell> BasisLibrary::shells(std::string_view basis_name, std::string_view symbol,
                                                  const Eigen::Vector3d& center) const {
  const auto b = tables_.find(upper(basis_name));
  if (b == tables_.end()) throw std::invalid_argument("unsupported basis '" + std::string(basis_name) + "'");
  const auto e = b->second.find(upper(symbol));
  if (e == b->second.end())
    throw std::invalid_argument("basis '" + std::string(basis_name) + "' has no data for element '" +
                                std::string(symbol) + "'");
  std::vector<ContractedShell> out;
  for (const auto& s : e->second) out.emplace_back(center, s.exponents, s.coefficients);
  return out;
}

std::vector<std::string> BasisLibrary::basis_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : tables_) out.push_back(name);
  return out;
}

}  // namespace brg
