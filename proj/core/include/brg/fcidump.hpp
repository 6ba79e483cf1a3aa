// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "brg/integral_set.hpp"

namespace brg::fcidump {

struct Header {
  int norb = 0;
  int nelec = 0;
  int ms2 = 0;
  std::vector<int> orbsym;  // parsed and carried, never used for math
  int isym = 1;
};

/// Thrown for malformed input; `line()` is the 1-based offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("FCIDUMP line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct Document {
  Header header;
  IntegralSet integrals;
};

/// Accepts `&FCI ... &END` and `/`-terminated namelists with case-insensitive keys.
/// Records are `value i j k l` with 1-based indices in chemist order (ij|kl).
Document parse(std::string_view text);
Document read_file(const std::string& path);

/// Canonical writer: two-electron records, then one-electron, then the core energy.
/// Entries with |value| <= threshold are dropped; the core record is always written.
std::string write(const Header& header, const IntegralSet& integrals, double threshold = 0.0);
void write_file(const std::string& path, const Header& header, const IntegralSet& integrals,
                double threshold = 0.0);

/// Header matching an integral set with a closed-shell electron count.
Header make_header(const IntegralSet& integrals, int nelec, int ms2 = 0);

}  // namespace brg::fcidump
