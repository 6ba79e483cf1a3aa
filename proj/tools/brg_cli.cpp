// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include "brg_cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "brg/fcidump.hpp"
#include "brg/integrals.hpp"
#include "json.hpp"

namespace brg::cli {

namespace fs = std::filesystem;

std::uint64_t config_hash(const Provenance& entries) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& [k, v] : entries) {
    feed(k);
    feed("=");
    feed(v);
    feed("\n");
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string comment_header(const std::string& command, const Provenance& entries) {
  std::ostringstream os;
  os << "# brg " << command << "\n";
  for (const auto& [k, v] : entries) os << "# " << k << "=" << v << "\n";
  os << "# config_hash=" << hex(config_hash(entries)) << "\n";
  return os.str();
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& xs, F&& f) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + f(xs[i]);
  return s;
}

std::string join_ints(const std::vector<int>& xs) {
  return join(xs, [](int v) { return std::to_string(v); });
}

std::string strategy_list(const std::vector<Strategy>& s) {
  return join(s, [](Strategy v) { return std::string(to_string(v)); });
}

std::string sanitize(std::string name) {
  for (char& c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.') c = '_';
  return name;
}

Provenance input_provenance(const InputOptions& in) {
  Provenance p;
  if (in.chain) {
    p.emplace_back("input", "chain");
    p.emplace_back("chain", std::to_string(*in.chain));
    p.emplace_back("spacing_angstrom", fmt(in.spacing));
    p.emplace_back("basis", in.basis);
  } else if (!in.xyz.empty()) {
    p.emplace_back("input", "xyz");
    p.emplace_back("xyz", in.xyz);
    p.emplace_back("basis", in.basis);
  } else {
    p.emplace_back("input", "fcidump");
    p.emplace_back("fcidump", in.fcidump);
  }
  p.emplace_back("frozen", join_ints(in.frozen));
  return p;
}

void check_one_input(const InputOptions& in) {
  const int sources = (in.chain ? 1 : 0) + (in.xyz.empty() ? 0 : 1) + (in.fcidump.empty() ? 0 : 1);
  if (sources != 1) throw CLI::ValidationError("input", "give exactly one of --chain, --xyz or --fcidump");
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

std::string read_text(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<CostRow> cost_rows(const PreparedSystem& sys, const RunConfig& config) {
  std::vector<std::future<CostRow>> jobs;
  for (const Strategy s : config.strategies)
    jobs.push_back(std::async(std::launch::async, [&sys, &config, s] {
      return cost_strategy(sys, build_plan(sys, s, config.seed), config.allocation, config.epsilon);
    }));
  std::vector<CostRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

Provenance cost_provenance(const RunConfig& config) {
  return {{"strategies", strategy_list(config.strategies)},
          {"epsilon_Eh", fmt(config.epsilon)},
          {"allocation", std::string(to_string(config.allocation))},
          {"seed", std::to_string(config.seed)}};
}

}  // namespace

SystemInput load_input(const InputOptions& in) {
  check_one_input(in);
  SystemInput s;
  if (in.chain) {
    s = hydrogen_chain_input(*in.chain, in.spacing, in.basis);
  } else if (!in.xyz.empty()) {
    s = geometry_input(parse_xyz(read_text(in.xyz)), in.basis, fs::path(in.xyz).stem().string() + "_" + in.basis);
  } else {
    s = fcidump_input(in.fcidump);
    s.name = fs::path(in.fcidump).stem().string();
  }
  if (!in.frozen.empty()) {
    s = with_frozen_core(s, in.frozen);
    s.name += "_fc" + std::to_string(in.frozen.size());
  }
  return s;
}

int cmd_prepare(const RunConfig& config, std::ostream& log) {
  const auto input = load_input(config.input);
  Provenance prov = input_provenance(config.input);
  const std::string stem = sanitize(input.name);
  const fs::path dump = fs::path(config.out) / (stem + ".fcidump");
  const fs::path meta = fs::path(config.out) / (stem + ".json");

  const auto header = fcidump::make_header(input.integrals, input.n_up + input.n_down, input.n_up - input.n_down);
  {
    auto f = open_output(dump);
    f << fcidump::write(header, input.integrals);
  }
  nlohmann::json j;
  j["system"] = input.name;
  for (const auto& [k, v] : prov) j["config"][k] = v;
  j["config_hash"] = hex(config_hash(prov));
  j["n_spatial"] = input.integrals.n_spatial;
  j["n_up"] = input.n_up;
  j["n_down"] = input.n_down;
  j["core_energy_Eh"] = input.integrals.e_core;
  if (input.scf_energy) j["scf_energy_Eh"] = *input.scf_energy;
  if (config.input.chain || !config.input.xyz.empty()) {
    const Geometry g = config.input.chain ? hydrogen_chain(*config.input.chain, config.input.spacing)
                                          : parse_xyz(read_text(config.input.xyz));
    j["geometry_bohr"] = nlohmann::json::array();
    for (const auto& a : g.atoms) j["geometry_bohr"].push_back({a.symbol, a.position.x(), a.position.y(), a.position.z()});
  }
  {
    auto f = open_output(meta);
    f << j.dump(2) << "\n";
  }
  log << "wrote " << dump.string() << " (" << 2 * input.integrals.n_spatial << " qubits)\n";
  if (input.scf_energy) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10f", *input.scf_energy);
    log << "scf_energy_Eh=" << buf << "\n";
  }
  return 0;
}

int cmd_cost(const RunConfig& config, std::ostream& log) {
  const auto sys = prepare_system(load_input(config.input));
  const auto rows = cost_rows(sys, config);
  Provenance prov = input_provenance(config.input);
  for (auto& e : cost_provenance(config)) prov.push_back(std::move(e));
  const fs::path path = fs::path(config.out) / "cost.csv";
  auto f = open_output(path);
  f << comment_header("cost", prov) << cost_csv_header() << "\n";
  for (const auto& r : rows) f << cost_csv_row(r) << "\n";
  for (const auto& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-9s groups=%-5d M=%.4e penalty=%.4f", r.strategy.c_str(), r.n_groups, r.m_total,
                  r.penalty_ratio);
    log << buf << "\n";
  }
  log << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_noise(const RunConfig& config, std::ostream& log) {
  const auto sys = prepare_system(load_input(config.input));
  const NoiseGrid grid = config.noise_grid.empty() ? NoiseGrid::defaults() : NoiseGrid::parse(read_text(config.noise_grid));
  NoiseOptions opts;
  opts.channel = config.channel;
  opts.identity_networks = config.identity_networks;
  opts.seed = config.seed;
  const auto rows = noise_sweep(sys, grid, opts);

  Provenance prov = input_provenance(config.input);
  prov.emplace_back("p_depol", join(grid.p_depol, fmt));
  prov.emplace_back("p_readout", join(grid.p_readout, fmt));
  prov.emplace_back("channel", std::string(to_string(config.channel)));
  prov.emplace_back("identity_networks", std::to_string(config.identity_networks));
  prov.emplace_back("seed", std::to_string(config.seed));
  char energy[64];
  std::snprintf(energy, sizeof(energy), "%.10f", sys.fci.energy);
  prov.emplace_back("fci_energy_Eh", energy);
  const fs::path path = fs::path(config.out) / "noise.csv";
  auto f = open_output(path);
  f << comment_header("noise", prov) << noise_csv_header() << "\n";
  for (const auto& r : rows) f << noise_csv_row(r) << "\n";
  log << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
  return 0;
}

std::vector<ScalingFit> fit_cost_rows(const std::vector<CostRow>& rows, double epsilon) {
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  std::set<std::string> seen;
  for (const auto& r : rows) {
    series[r.strategy].emplace_back(r.n_qubits, r.m_total);
    if (seen.insert(r.system).second) series["qubit-bound"].emplace_back(r.n_qubits, r.bounds.qubit / (epsilon * epsilon));
  }
  std::vector<ScalingFit> out;
  for (const auto& [name, pts] : series) out.push_back({name, pts.size(), powerlaw_fit(pts)});
  return out;
}

std::vector<CostRow> read_cost_csv(const std::string& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::vector<std::string> columns;
  std::vector<CostRow> rows;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  };
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (columns.empty()) {
      columns = split(line);
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != columns.size())
      throw std::invalid_argument(path + " line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(columns.size()) + " columns");
    std::map<std::string, std::string> v;
    for (std::size_t i = 0; i < cells.size(); ++i) v[columns[i]] = cells[i];
    auto num = [&](const char* key) {
      const auto it = v.find(key);
      if (it == v.end()) throw std::invalid_argument(path + ": missing column " + key);
      return std::stod(it->second);
    };
    CostRow r;
    r.system = v["system"];
    r.strategy = v["strategy"];
    r.allocation = v["allocation"];
    r.n_qubits = static_cast<int>(num("n_qubits"));
    r.m_total = num("m_total");
    r.bounds.qubit = num("bound_qubit_Eh2");
    if (v.count("epsilon_Eh")) r.epsilon = num("epsilon_Eh");
    rows.push_back(r);
  }
  return rows;
}

int cmd_scaling(const RunConfig& config, std::ostream& log) {
  std::vector<CostRow> rows;
  Provenance prov;
  if (!config.from_csv.empty()) {
    rows = read_cost_csv(config.from_csv);
    prov.emplace_back("from", config.from_csv);
  } else {
    if (config.series.size() < 3) throw std::invalid_argument("scaling: --series needs at least three chain lengths");
    const std::vector<double> spacings = config.spacings.empty() ? std::vector<double>{config.input.spacing} : config.spacings;
    std::vector<std::future<std::vector<CostRow>>> jobs;
    for (const int n : config.series)
      for (const double d : spacings)
        jobs.push_back(std::async(std::launch::async, [n, d, &config] {
          return cost_rows(prepare_system(hydrogen_chain_input(n, d, config.input.basis)), config);
        }));
    for (auto& j : jobs)
      for (auto& r : j.get()) rows.push_back(std::move(r));
    prov.emplace_back("series", join_ints(config.series));
    prov.emplace_back("spacings_angstrom", join(spacings, fmt));
    prov.emplace_back("basis", config.input.basis);
  }
  for (auto& e : cost_provenance(config)) prov.push_back(std::move(e));
  const auto fits = fit_cost_rows(rows, config.epsilon);

  std::set<int> sizes;
  for (const auto& r : rows) sizes.insert(r.n_qubits);
  prov.emplace_back("distinct_sizes", std::to_string(sizes.size()));
  const fs::path path = fs::path(config.out) / "scaling.csv";
  auto f = open_output(path);
  f << comment_header("scaling", prov) << "series,n_points,log_a,b\n";
  for (const auto& s : fits) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s,%zu,%.6f,%.6f", s.series.c_str(), s.n_points, s.fit.log_a, s.fit.b);
    f << buf << "\n";
    log << buf << "\n";
  }
  if (config.from_csv.empty()) {
    auto points = open_output(fs::path(config.out) / "scaling_points.csv");
    points << comment_header("scaling", prov) << cost_csv_header() << "\n";
    for (const auto& r : rows) points << cost_csv_row(r) << "\n";
  }
  log << "epsilon_Eh=" << fmt(config.epsilon) << " allocation=" << to_string(config.allocation) << "\n";
  if (sizes.size() < 6) log << "note: " << sizes.size() << " distinct sizes; treat b as a rough estimate\n";
  log << "wrote " << path.string() << "\n";
  return 0;
}

namespace {

void add_input_options(CLI::App* app, RunConfig& c) {
  app->add_option("--chain", c.input.chain, "Hydrogen chain with this many atoms")->check(CLI::PositiveNumber);
  app->add_option("--spacing", c.input.spacing, "Chain spacing in angstrom")->check(CLI::PositiveNumber);
  app->add_option("--basis", c.input.basis, "Basis set (sto-3g or 6-31g)");
  app->add_option("--xyz", c.input.xyz, "Geometry file: charge/multiplicity line, then element x y z in angstrom");
  app->add_option("--fcidump", c.input.fcidump, "FCIDUMP integral file");
  app->add_option("--frozen", c.input.frozen, "Orbitals to freeze, comma separated")->delimiter(',');
}

void add_cost_options(CLI::App* app, RunConfig& c, std::vector<std::string>& strategies, std::string& allocation) {
  app->add_option("--strategies", strategies, "Comma separated: separate, pauli, brg")->delimiter(',');
  app->add_option("--epsilon", c.epsilon, "Target standard error in hartree")->check(CLI::PositiveNumber);
  app->add_option("--allocation", allocation, "State used for shot fractions: cisd, fci or uniform");
}

void add_common(CLI::App* app, RunConfig& c) {
  app->add_option("--seed", c.seed, "Seed for grouping order and random networks");
  app->add_option("--out", c.out, "Output directory");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement cost and noise studies for basis rotation grouping", "brg"};
  app.require_subcommand(1);
  RunConfig c;
  std::vector<std::string> strategies;
  std::string allocation = "cisd";
  std::string channel = "depolarizing";

  auto* prepare = app.add_subcommand("prepare", "Build integrals and write an FCIDUMP plus metadata");
  add_input_options(prepare, c);
  add_common(prepare, c);

  auto* cost = app.add_subcommand("cost", "Measurement counts per strategy");
  add_input_options(cost, c);
  add_cost_options(cost, c, strategies, allocation);
  add_common(cost, c);

  auto* noise = app.add_subcommand("noise", "Noisy energy errors over a grid");
  add_input_options(noise, c);
  noise->add_option("--noise-grid", c.noise_grid, "File with p_depol and p_readout lines");
  noise->add_option("--channel", channel, "Gate channel: depolarizing or dephasing");
  noise->add_option("--identity-prep", c.identity_networks, "Prepend this many random networks composing to identity");
  add_common(noise, c);

  auto* scaling = app.add_subcommand("scaling", "Power-law fits over a chain series");
  scaling->add_option("--series", c.series, "Chain lengths, comma separated")->delimiter(',');
  scaling->add_option("--spacing", c.input.spacing, "Chain spacing in angstrom")->check(CLI::PositiveNumber);
  scaling->add_option("--spacings", c.spacings, "Several spacings pooled into one fit")->delimiter(',');
  scaling->add_option("--basis", c.input.basis, "Basis set");
  scaling->add_option("--from", c.from_csv, "Fit rows of an existing cost CSV instead");
  add_cost_options(scaling, c, strategies, allocation);
  add_common(scaling, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (!strategies.empty()) {
      c.strategies.clear();
      for (const auto& s : strategies) c.strategies.push_back(parse_strategy(s));
    }
    c.allocation = parse_allocation(allocation);
    c.channel = parse_gate_channel(channel);
    if (c.identity_networks == 1 || c.identity_networks < 0)
      throw std::invalid_argument("--identity-prep needs 0 or at least 2 networks");
    if (prepare->parsed()) return cmd_prepare(c, out);
    if (cost->parsed()) return cmd_cost(c, out);
    if (noise->parsed()) return cmd_noise(c, out);
    return cmd_scaling(c, out);
  } catch (const CLI::ValidationError& e) {
    err << "brg: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "brg: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace brg::cli
