// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <bit>
#include <stdexcept>

#include "brg/serialization.hpp"
#include "json.hpp"

namespace brg {

using nlohmann::json;

namespace {

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::MatrixXd matrix_from(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j.at(static_cast<std::size_t>(i)).size()) != cols)
      throw std::invalid_argument("matrix rows have unequal length");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
  }
  return m;
}

Eigen::VectorXd vector_from(const json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

}  // namespace

std::string factorized_to_json(const FactorizedHamiltonian& f) {
  json j;
  j["n_spatial"] = f.n_spatial;
  j["constant"] = f.constant;
  j["one_body"] = {{"g", vector_json(f.one_body.g)}, {"u", matrix_json(f.one_body.u)}};
  j["fragments"] = json::array();
  for (const auto& t : f.fragments)
    j["fragments"].push_back({{"w", t.w}, {"lambda", vector_json(t.lambda)}, {"g", matrix_json(t.g)}, {"u", matrix_json(t.u)}});
  return j.dump(1);
}

FactorizedHamiltonian factorized_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    FactorizedHamiltonian f;
    f.n_spatial = j.at("n_spatial").get<int>();
    f.constant = j.at("constant").get<double>();
    f.one_body.g = vector_from(j.at("one_body").at("g"));
    f.one_body.u = matrix_from(j.at("one_body").at("u"));
    for (const auto& t : j.at("fragments")) {
      TwoBodyFragment frag;
      frag.w = t.at("w").get<double>();
      frag.lambda = vector_from(t.at("lambda"));
      frag.g = matrix_from(t.at("g"));
      frag.u = matrix_from(t.at("u"));
      f.fragments.push_back(std::move(frag));
    }
    return f;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("factorized Hamiltonian JSON: ") + e.what());
  }
}

std::string plan_to_json(const MeasurementPlan& plan) {
  json j;
  j["strategy"] = std::string(to_string(plan.strategy));
  j["n_qubits"] = plan.n_qubits;
  j["total_constant"] = plan.total_constant;
  j["groups"] = json::array();
  for (std::size_t i = 0; i < plan.groups.size(); ++i) {
    const auto& g = plan.groups[i];
    json jg;
    jg["label"] = g.label;
    jg["basis_change"] = std::string(to_string(g.basis_change));
    if (g.basis_change != BasisChange::kGivens) jg["axes"] = g.axes.label();
    if (g.basis_change == BasisChange::kGivens) {
      jg["n_modes"] = g.network.n_modes;
      jg["givens"] = json::array();
      for (const auto& r : g.network.rotations) jg["givens"].push_back({r.wire, r.theta});
    }
    jg["observable"] = json::array();
    for (const auto& z : g.observable) {
      json qubits = json::array();
      for (std::uint64_t rest = z.mask; rest != 0; rest &= rest - 1) qubits.push_back(std::countr_zero(rest));
      jg["observable"].push_back({{"z", qubits}, {"coefficient", z.coefficient}});
    }
    if (!g.pauli_terms.empty()) {
      jg["pauli_terms"] = json::array();
      for (const auto& [p, c] : g.pauli_terms) jg["pauli_terms"].push_back({{"label", p.label()}, {"coefficient", c}});
    }
    jg["fraction"] = i < plan.fractions.size() ? plan.fractions[i] : 0.0;
    j["groups"].push_back(std::move(jg));
  }
  return j.dump(1);
}

MeasurementPlan plan_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    MeasurementPlan plan;
    plan.strategy = parse_strategy(j.at("strategy").get<std::string>());
    plan.n_qubits = j.at("n_qubits").get<int>();
    plan.total_constant = j.at("total_constant").get<double>();
    for (const auto& jg : j.at("groups")) {
      MeasurementGroup g;
      g.label = jg.at("label").get<std::string>();
      const auto kind = jg.at("basis_change").get<std::string>();
      if (kind == "none") {
        g.basis_change = BasisChange::kNone;
        if (jg.contains("axes")) g.axes = PauliString::parse(jg.at("axes").get<std::string>());
      } else if (kind == "single-qubit") {
        g.basis_change = BasisChange::kSingleQubit;
        g.axes = PauliString::parse(jg.at("axes").get<std::string>());
      } else if (kind == "givens") {
        g.basis_change = BasisChange::kGivens;
        g.network.n_modes = jg.at("n_modes").get<int>();
        for (const auto& r : jg.at("givens")) g.network.rotations.push_back({r.at(0).get<int>(), r.at(1).get<double>()});
        g.network.layers = schedule_layers(g.network.n_modes, g.network.rotations);
      } else {
        throw std::invalid_argument("unknown basis change '" + kind + "'");
      }
      for (const auto& z : jg.at("observable")) {
        std::uint64_t mask = 0;
        for (const auto& q : z.at("z")) mask |= std::uint64_t{1} << q.get<int>();
        g.observable.push_back({mask, z.at("coefficient").get<double>()});
      }
      if (jg.contains("pauli_terms"))
        for (const auto& t : jg.at("pauli_terms"))
          g.pauli_terms.emplace_back(PauliString::parse(t.at("label").get<std::string>()), t.at("coefficient").get<double>());
      plan.fractions.push_back(jg.at("fraction").get<double>());
      plan.groups.push_back(std::move(g));
    }
    return plan;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("measurement plan JSON: ") + e.what());
  }
}

}  // namespace brg
