// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include "brg/fcidump.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <tuple>

namespace brg::fcidump {

namespace {

constexpr double kConflictTolerance = 1e-10;

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& tok, std::size_t line) {
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
}

double parse_real(std::string tok, std::size_t line) {
  // Fortran writers sometimes emit D exponents.
  std::replace(tok.begin(), tok.end(), 'D', 'E');
  std::replace(tok.begin(), tok.end(), 'd', 'e');
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + tok + "'");
  }
}

// Parse `KEY=v1,v2,...` assignments inside the namelist body.
void parse_namelist(const std::string& body, std::size_t first_line, Header& header) {
  std::map<std::string, std::vector<std::string>> values;
  const std::string normalized = std::regex_replace(body, std::regex(R"(\s*=\s*)"), "=");
  std::string current;
  std::string token;
  auto flush = [&]() {
    const std::string t = trim(token);
    token.clear();
    if (t.empty()) return;
    const auto eq = t.find('=');
    if (eq != std::string::npos) {
      current = upper(trim(t.substr(0, eq)));
      if (current.empty()) throw ParseError(first_line, "empty key in namelist");
      values[current];
      const std::string rest = trim(t.substr(eq + 1));
      if (!rest.empty()) values[current].push_back(rest);
    } else {
      if (current.empty()) throw ParseError(first_line, "value '" + t + "' without a key");
      values[current].push_back(t);
    }
  };
  for (char ch : normalized) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      flush();
      continue;
    }
    token.push_back(ch);
  }
  flush();

  auto scalar = [&](const char* key, bool required, int fallback) {
    const auto it = values.find(key);
    if (it == values.end()) {
      if (required) throw ParseError(first_line, std::string("namelist is missing ") + key);
      return fallback;
    }
    if (it->second.size() != 1) throw ParseError(first_line, std::string(key) + " must have exactly one value");
    return parse_int(it->second.front(), first_line);
  };
  header.norb = scalar("NORB", true, 0);
  header.nelec = scalar("NELEC", true, 0);
  header.ms2 = scalar("MS2", false, 0);
  header.isym = scalar("ISYM", false, 1);
  header.orbsym.clear();
  if (const auto it = values.find("ORBSYM"); it != values.end())
    for (const auto& v : it->second) header.orbsym.push_back(parse_int(v, first_line));
  if (header.norb < 1) throw ParseError(first_line, "NORB must be at least 1");
  if (header.nelec < 0 || header.nelec > 2 * header.norb) throw ParseError(first_line, "NELEC out of range");
  if (!header.orbsym.empty() && static_cast<int>(header.orbsym.size()) != header.norb)
    throw ParseError(first_line, "ORBSYM length differs from NORB");
}

}  // namespace

Document parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;

  // Namelist: from the line containing &FCI to the terminator (&END, $END or '/').
  std::string body;
  std::size_t header_line = 0;
  bool started = false;
  bool finished = false;
  while (!finished && std::getline(in, line)) {
    ++line_no;
    std::string work = line;
    if (!started) {
      const auto pos = upper(work).find("&FCI");
      if (pos == std::string::npos) {
        if (trim(work).empty()) continue;
        throw ParseError(line_no, "expected '&FCI' namelist header");
      }
      started = true;
      header_line = line_no;
      work = work.substr(pos + 4);
    }
    const std::string up = upper(work);
    std::size_t end = std::string::npos;
    for (const char* term : {"&END", "$END", "/"}) {
      const auto p = up.find(term);
      if (p != std::string::npos) end = std::min(end, p);
    }
    if (end != std::string::npos) {
      body += work.substr(0, end);
      finished = true;
    } else {
      body += work + "\n";
    }
  }
  if (!started) throw ParseError(line_no == 0 ? 1 : line_no, "empty input");
  if (!finished) throw ParseError(line_no, "unterminated namelist");

  Document doc;
  parse_namelist(body, header_line, doc.header);
  const int n = doc.header.norb;
  doc.integrals = IntegralSet::zeros(n);

  // Each symmetry-unique slot remembers its first value to detect conflicts.
  std::map<std::array<int, 4>, double> seen;
  auto check = [&](std::array<int, 4> key, double value) {
    const auto [it, inserted] = seen.emplace(key, value);
    if (!inserted && std::abs(it->second - value) > kConflictTolerance)
      throw ParseError(line_no, "conflicting duplicate record");
  };
  Eigen::VectorXd orbital_energies = Eigen::VectorXd::Zero(n);
  bool have_orbital_energies = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream rec(line);
    std::vector<std::string> toks;
    for (std::string t; rec >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks.size() != 5) throw ParseError(line_no, "expected 'value i j k l'");
    const double value = parse_real(toks[0], line_no);
    if (!std::isfinite(value)) throw ParseError(line_no, "non-finite value");
    int idx[4];
    for (int a = 0; a < 4; ++a) {
      idx[a] = parse_int(toks[a + 1], line_no);
      if (idx[a] < 0 || idx[a] > n) throw ParseError(line_no, "orbital index out of range");
    }
    const auto [i, j, k, l] = std::tuple{idx[0], idx[1], idx[2], idx[3]};
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      check({0, 0, 0, 0}, value);
      doc.integrals.e_core = value;
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      orbital_energies(i - 1) = value;
      have_orbital_energies = true;
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      check({std::max(i, j), std::min(i, j), 0, 0}, value);
      doc.integrals.h(i - 1, j - 1) = value;
      doc.integrals.h(j - 1, i - 1) = value;
    } else if (i > 0 && j > 0 && k > 0 && l > 0) {
      std::array<int, 2> a{std::max(i, j), std::min(i, j)};
      std::array<int, 2> b{std::max(k, l), std::min(k, l)};
      if (a < b) std::swap(a, b);
      check({a[0], a[1], b[0], b[1]}, value);
      doc.integrals.v.set_symmetric(i - 1, j - 1, k - 1, l - 1, value);
    } else {
      throw ParseError(line_no, "malformed index pattern");
    }
  }
  if (have_orbital_energies) doc.integrals.orbital_energies = orbital_energies;
  return doc;
}

Document read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open FCIDUMP file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string write(const Header& header, const IntegralSet& ints, double threshold) {
  const int n = ints.n_spatial;
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), " &FCI NORB=%d,NELEC=%d,MS2=%d,\n  ORBSYM=", n, header.nelec, header.ms2);
  out += buf;
  for (int p = 0; p < n; ++p) {
    const int sym = header.orbsym.size() == static_cast<std::size_t>(n) ? header.orbsym[p] : 1;
    out += std::to_string(sym) + ",";
  }
  std::snprintf(buf, sizeof(buf), "\n  ISYM=%d,\n &END\n", header.isym);
  out += buf;
  auto record = [&](double value, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof(buf), "%24.16E %4d %4d %4d %4d\n", value, i, j, k, l);
    out += buf;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k <= i; ++k)
        for (int l = 0; l <= k; ++l) {
          if (i * (i + 1) / 2 + j < k * (k + 1) / 2 + l) continue;
          const double value = ints.v(i, j, k, l);
          if (std::abs(value) > threshold) record(value, i + 1, j + 1, k + 1, l + 1);
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      if (std::abs(ints.h(i, j)) > threshold) record(ints.h(i, j), i + 1, j + 1, 0, 0);
  record(ints.e_core, 0, 0, 0, 0);
  return out;
}

void write_file(const std::string& path, const Header& header, const IntegralSet& integrals, double threshold) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write FCIDUMP file '" + path + "'");
  out << write(header, integrals, threshold);
  if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

Header make_header(const IntegralSet& integrals, int nelec, int ms2) {
  Header h;
  h.norb = integrals.n_spatial;
  h.nelec = nelec;
  h.ms2 = ms2;
  h.orbsym.assign(static_cast<std::size_t>(integrals.n_spatial), 1);
  return h;
}

}  // namespace brg::fcidump
