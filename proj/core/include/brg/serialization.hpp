// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "brg/factorization.hpp"
#include "brg/grouping.hpp"

namespace brg {

/// JSON text: {"n_spatial", "constant", "one_body": {"g", "u"}, "fragments": [{"w", "lambda", "g", "u"}]}.
/// Matrices are arrays of rows.
std::string factorized_to_json(const FactorizedHamiltonian& f);
FactorizedHamiltonian factorized_from_json(std::string_view text);

/// JSON text with one entry per group: label, basis change, axes or Givens list,
/// diagonal monomials (qubit lists with coefficients) and the shot fraction.
std::string plan_to_json(const MeasurementPlan& plan);
MeasurementPlan plan_from_json(std::string_view text);

}  // namespace brg
