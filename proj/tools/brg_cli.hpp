// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brg/estimator.hpp"
#include "brg/grouping.hpp"
#include "brg/noisysim.hpp"
#include "brg/pipeline.hpp"

namespace brg::cli {

/// Exactly one of chain / xyz / fcidump is set.
struct InputOptions {
  std::optional<int> chain;
  double spacing = 1.0;
  std::string basis = "sto-3g";
  std::string xyz;
  std::string fcidump;
  std::vector<int> frozen;
};

struct RunConfig {
  InputOptions input;
  std::vector<Strategy> strategies{Strategy::kSeparate, Strategy::kPauliGrouping, Strategy::kBasisRotation};
  double epsilon = kDefaultEpsilon;
  AllocationSource allocation = AllocationSource::kCisd;
  std::string noise_grid;  // empty: built-in grid
  GateChannel channel = GateChannel::kDepolarizing;
  int identity_networks = 0;
  std::uint64_t seed = 0;
  std::vector<int> series;        // scaling: chain lengths
  std::vector<double> spacings;   // scaling: empty means input.spacing
  std::string from_csv;           // scaling: read an existing cost CSV instead
  std::string out = ".";
};

using Provenance = std::vector<std::pair<std::string, std::string>>;

/// 64-bit FNV-1a over "key=value\n" lines.
std::uint64_t config_hash(const Provenance& entries);
std::string hex(std::uint64_t v);

/// `# key=value` lines, ending with the config hash.
std::string comment_header(const std::string& command, const Provenance& entries);

SystemInput load_input(const InputOptions& input);

struct ScalingFit {
  std::string series;
  std::size_t n_points = 0;
  PowerLawFit fit;
};

/// One series per strategy plus the qubit bound; points are (n_qubits, shots).
std::vector<ScalingFit> fit_cost_rows(const std::vector<CostRow>& rows, double epsilon);
std::vector<CostRow> read_cost_csv(const std::string& path);

int cmd_prepare(const RunConfig& config, std::ostream& log);
int cmd_cost(const RunConfig& config, std::ostream& log);
int cmd_noise(const RunConfig& config, std::ostream& log);
int cmd_scaling(const RunConfig& config, std::ostream& log);

/// Parse argv and dispatch; errors go to `err` with a nonzero return.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace brg::cli
