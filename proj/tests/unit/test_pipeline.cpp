// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "brg/fcidump.hpp"
#include "brg/pipeline.hpp"
#include "oracles.hpp"

#ifdef BRG_HAVE_CLI
#include "brg_cli.hpp"
#endif

namespace brg {
namespace {

namespace fs = std::filesystem;

const std::string kWater = std::string(BRG_TEST_DATA_DIR) + "/h2o_sto3g.fcidump";

const PreparedSystem& chain(int atoms, double spacing = 1.0) {
  static std::map<std::pair<int, double>, PreparedSystem> cache;
  auto key = std::pair(atoms, spacing);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, prepare_system(hydrogen_chain_input(atoms, spacing, "sto-3g"))).first;
  return it->second;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST(Inputs, HydrogenChainAndGeometry) {
  const auto h4 = hydrogen_chain_input(4, 0.9, "sto-3g");
  EXPECT_EQ(h4.name, "H4_0.9000_sto-3g");
  EXPECT_EQ(h4.n_up, 2);
  EXPECT_EQ(h4.n_down, 2);
  ASSERT_TRUE(h4.scf_energy.has_value());
  EXPECT_THROW(hydrogen_chain_input(3, 1.0, "sto-3g"), std::invalid_argument);
  Geometry g = hydrogen_chain(2, 0.7414);
  const auto h2 = geometry_input(g, "sto-3g", "h2");
  EXPECT_EQ(h2.name, "h2");
  g.multiplicity = 3;
  EXPECT_THROW(geometry_input(g, "sto-3g", "x"), std::invalid_argument);
}

TEST(Inputs, FcidumpAndFrozenCore) {
  const auto water = fcidump_input(kWater);
  EXPECT_EQ(water.integrals.n_spatial, 7);
  EXPECT_EQ(water.n_up, 5);
  EXPECT_EQ(water.n_down, 5);
  EXPECT_FALSE(water.scf_energy.has_value());
  const auto frozen = with_frozen_core(water, {0});
  EXPECT_EQ(frozen.integrals.n_spatial, 6);
  EXPECT_EQ(frozen.n_up, 4);
  EXPECT_EQ(with_frozen_core(water, {}).integrals.n_spatial, 7);
  const auto h2 = hydrogen_chain_input(2, 0.74, "sto-3g");
  EXPECT_THROW(with_frozen_core(h2, {0, 1}), std::invalid_argument);
  EXPECT_THROW(fcidump_input("/nonexistent/x.fcidump"), std::exception);
}

TEST(PreparedSystem, ConsistentFields) {
  const auto input = hydrogen_chain_input(4, 1.0, "sto-3g");
  const auto& sys = chain(4);
  EXPECT_EQ(sys.n_qubits(), 8);
  EXPECT_NEAR(sys.hf_energy, *input.scf_energy, 1e-8);
  EXPECT_LE(sys.fci.energy, sys.cisd.energy);
  EXPECT_LE(sys.cisd.energy, sys.hf_energy);
  EXPECT_NEAR(sys.fci.energy, oracle::sector_ground_energy(oracle::hamiltonian_matrix(sys.integrals), 4, 2, 2), 1e-10);
  EXPECT_GT(sys.bounds.qubit, 0.0);
}

TEST(Cost, StrategyOrderingOnH4) {
  const auto& sys = chain(4);
  std::map<Strategy, CostRow> rows;
  for (auto s : {Strategy::kSeparate, Strategy::kPauliGrouping, Strategy::kBasisRotation})
    rows[s] = cost_strategy(sys, build_plan(sys, s), AllocationSource::kCisd);
  EXPECT_LT(rows[Strategy::kBasisRotation].m_total, rows[Strategy::kPauliGrouping].m_total);
  EXPECT_LT(rows[Strategy::kPauliGrouping].m_total, rows[Strategy::kSeparate].m_total);
  EXPECT_LE(rows[Strategy::kSeparate].m_total, sys.bounds.qubit / (kDefaultEpsilon * kDefaultEpsilon));
  EXPECT_EQ(rows[Strategy::kBasisRotation].n_groups, static_cast<int>(factorize(sys.integrals).fragments.size()) + 1);
}

TEST(NoiseGrid, ParseAndDefaults) {
  const auto grid = NoiseGrid::parse("# comment\np_depol 0, 1e-3\n\np_readout 0.01 0.02,0.03\n");
  EXPECT_EQ(grid.p_depol, (std::vector<double>{0.0, 1e-3}));
  EXPECT_EQ(grid.p_readout, (std::vector<double>{0.01, 0.02, 0.03}));
  EXPECT_THROW(NoiseGrid::parse("p_depol 0.1\n"), std::invalid_argument);
  EXPECT_THROW(NoiseGrid::parse("p_depol 0.1\np_gate 0.2\n"), std::invalid_argument);
  try {
    NoiseGrid::parse("p_depol 0.1\np_readout abc\n");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  const auto d = NoiseGrid::defaults();
  EXPECT_FALSE(d.p_depol.empty());
  EXPECT_FALSE(d.p_readout.empty());
}

TEST(NoiseSweep, ZeroNoiseAndShape) {
  const auto& sys = chain(4);
  NoiseGrid grid{{0.0, 1e-3}, {0.0, 1e-2}};
  const auto rows = noise_sweep(sys, grid);
  ASSERT_EQ(rows.size(), 16u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(rows[i].p_depol, 0.0);
    EXPECT_EQ(rows[i].p_readout, 0.0);
    EXPECT_LT(rows[i].abs_error_mha, 1e-6) << rows[i].strategy << " " << rows[i].mitigation;
  }
  EXPECT_EQ(rows[0].strategy, "pauli");
  EXPECT_EQ(rows[1].mitigation, "parity");
  EXPECT_EQ(rows[3].mitigation, "postselect");
  const auto again = noise_sweep(sys, grid);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].abs_error_mha, again[i].abs_error_mha);
  const std::string header = noise_csv_header();
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 5);
}

TEST(NoiseSweep, ReadoutCornerFavoursPostselection) {
  const auto& sys = chain(4);
  const auto rows = noise_sweep(sys, NoiseGrid{{2.5e-4}, {1e-2}});
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_LT(rows[3].abs_error_mha, rows[1].abs_error_mha);
  EXPECT_LT(rows[3].abs_error_mha, rows[2].abs_error_mha);
}

TEST(NoiseSweep, IdentityPrepIsDeterministic) {
  const auto& sys = chain(4);
  NoiseOptions opts;
  opts.identity_networks = 3;
  opts.seed = 5;
  const NoiseGrid grid{{0.0, 2e-3}, {0.0}};
  const auto a = noise_sweep(sys, grid, opts);
  const auto b = noise_sweep(sys, grid, opts);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].abs_error_mha, b[i].abs_error_mha);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(a[i].abs_error_mha, 1e-6);
  EXPECT_GT(a[6].abs_error_mha, 1e-3);  // prep noise biases unmitigated BRG
}

#ifdef BRG_HAVE_CLI

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("brg_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "brg");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return cli::run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST(ConfigHash, Fnv1a) {
  EXPECT_EQ(cli::hex(cli::config_hash({})), "cbf29ce484222325");
  EXPECT_EQ(cli::hex(cli::config_hash({{"a", "b"}})), "ec8b8c82c37596fb");
  EXPECT_EQ(cli::hex(cli::config_hash({{"a", "b"}, {"c", "d"}})), "9591bb4b2a09cf61");
  const std::string h = cli::comment_header("cost", {{"a", "b"}});
  EXPECT_EQ(h, "# brg cost\n# a=b\n# config_hash=ec8b8c82c37596fb\n");
}

TEST_F(Cli, PrepareWritesLoadableArtifact) {
  ASSERT_EQ(run({"prepare", "--chain", "2", "--spacing", "0.7414", "--out", dir_.string()}), 0) << err_.str();
  const fs::path dump = dir_ / "H2_0.7414_sto-3g.fcidump";
  ASSERT_TRUE(fs::exists(dump));
  ASSERT_TRUE(fs::exists(dir_ / "H2_0.7414_sto-3g.json"));
  EXPECT_NE(out_.str().find("scf_energy_Eh="), std::string::npos);
  const auto sys = prepare_system(fcidump_input(dump.string()));
  EXPECT_NEAR(sys.fci.energy, -1.1373, 1e-4);
  const std::string meta = slurp(dir_ / "H2_0.7414_sto-3g.json");
  EXPECT_NE(meta.find("\"geometry_bohr\""), std::string::npos);
  EXPECT_NE(meta.find("\"config_hash\""), std::string::npos);
}

TEST_F(Cli, PrepareFromXyzAndFrozenFcidump) {
  const fs::path xyz = dir_ / "h2.xyz";
  std::ofstream(xyz) << "0 1\nH 0 0 0\nH 0 0 0.7414\n";
  ASSERT_EQ(run({"prepare", "--xyz", xyz.string(), "--out", dir_.string()}), 0) << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "h2_sto-3g.fcidump"));
  ASSERT_EQ(run({"prepare", "--fcidump", kWater, "--frozen", "0", "--out", dir_.string()}), 0) << err_.str();
  const auto doc = fcidump::read_file((dir_ / "h2o_sto3g_fc1.fcidump").string());
  EXPECT_EQ(doc.header.norb, 6);
  EXPECT_EQ(doc.header.nelec, 8);
}

TEST_F(Cli, MalformedFcidumpNamesLine) {
  const fs::path bad = dir_ / "bad.fcidump";
  std::ofstream(bad) << " &FCI NORB=2,NELEC=2,MS2=0,\n &END\n 0.5 1 1 x 1\n";
  EXPECT_NE(run({"prepare", "--fcidump", bad.string(), "--out", dir_.string()}), 0);
  EXPECT_NE(err_.str().find("line 3"), std::string::npos) << err_.str();
}

TEST_F(Cli, UsageErrors) {
  EXPECT_NE(run({"cost", "--out", dir_.string()}), 0);
  EXPECT_NE(err_.str().find("exactly one"), std::string::npos);
  EXPECT_NE(run({"cost", "--chain", "2", "--fcidump", kWater}), 0);
  EXPECT_NE(run({"cost", "--chain", "2", "--strategies", "magic"}), 0);
  EXPECT_NE(run({"cost", "--chain", "2", "--epsilon", "-1"}), 0);
  EXPECT_NE(run({"frobnicate"}), 0);
  EXPECT_NE(run({"scaling", "--series", "2,4", "--out", dir_.string()}), 0);
  EXPECT_NE(err_.str().find("three"), std::string::npos);
}

TEST_F(Cli, CostCsvHasHeaderAndRows) {
  ASSERT_EQ(run({"cost", "--chain", "4", "--allocation", "fci", "--out", dir_.string()}), 0) << err_.str();
  const std::string text = slurp(dir_ / "cost.csv");
  EXPECT_EQ(text.rfind("# brg cost\n", 0), 0u);
  EXPECT_NE(text.find("# epsilon_Eh=0.0005\n"), std::string::npos);
  EXPECT_NE(text.find("# allocation=fci\n"), std::string::npos);
  EXPECT_NE(text.find("# config_hash="), std::string::npos);
  EXPECT_NE(text.find(cost_csv_header()), std::string::npos);
  const auto rows = cli::read_cost_csv((dir_ / "cost.csv").string());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].strategy, "separate");
  EXPECT_EQ(rows[2].strategy, "brg");
  EXPECT_LT(rows[2].m_total, rows[1].m_total);
  EXPECT_NEAR(rows[2].m_total, cost_strategy(chain(4), build_plan(chain(4), Strategy::kBasisRotation),
                                             AllocationSource::kFci).m_total,
              1e-6 * rows[2].m_total);
}

TEST_F(Cli, NoiseIsDeterministic) {
  const fs::path grid = dir_ / "grid.txt";
  std::ofstream(grid) << "p_depol 0 1e-3\np_readout 0 1e-2\n";
  const fs::path a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(run({"noise", "--chain", "4", "--noise-grid", grid.string(), "--identity-prep", "3", "--seed", "2",
                 "--out", a.string()}),
            0)
      << err_.str();
  ASSERT_EQ(run({"noise", "--chain", "4", "--noise-grid", grid.string(), "--identity-prep", "3", "--seed", "2",
                 "--out", b.string()}),
            0);
  const std::string text = slurp(a / "noise.csv");
  EXPECT_EQ(text, slurp(b / "noise.csv"));
  EXPECT_NE(text.find(noise_csv_header()), std::string::npos);
  EXPECT_NE(text.find("# identity_networks=3\n"), std::string::npos);
  EXPECT_NE(run({"noise", "--chain", "4", "--identity-prep", "1", "--out", a.string()}), 0);
}

TEST_F(Cli, ScalingFromSyntheticQuarticSeries) {
  const fs::path csv = dir_ / "synthetic.csv";
  {
    std::ofstream f(csv);
    f << "# synthetic\n" << cost_csv_header() << "\n";
    for (int n : {4, 8, 12, 16}) {
      CostRow r;
      r.system = "S" + std::to_string(n);
      r.n_qubits = n;
      r.strategy = "brg";
      r.allocation = "fci";
      r.m_total = std::pow(n, 4);
      r.bounds.qubit = 3.0 * std::pow(n, 5) * kDefaultEpsilon * kDefaultEpsilon;
      f << cost_csv_row(r) << "\n";
    }
  }
  ASSERT_EQ(run({"scaling", "--from", csv.string(), "--out", dir_.string()}), 0) << err_.str();
  const auto rows = cli::read_cost_csv(csv.string());
  const auto fits = cli::fit_cost_rows(rows, kDefaultEpsilon);
  ASSERT_EQ(fits.size(), 2u);
  for (const auto& f : fits) {
    if (f.series == "brg") {
      EXPECT_NEAR(f.fit.b, 4.0, 1e-9);
      EXPECT_NEAR(f.fit.log_a, 0.0, 1e-8);
    } else {
      EXPECT_EQ(f.series, "qubit-bound");
      EXPECT_NEAR(f.fit.b, 5.0, 1e-9);
    }
  }
  EXPECT_NE(out_.str().find("epsilon_Eh=0.0005 allocation=cisd"), std::string::npos);
  EXPECT_NE(slurp(dir_ / "scaling.csv").find("series,n_points,log_a,b"), std::string::npos);
}

TEST_F(Cli, ScalingOverChains) {
  ASSERT_EQ(run({"scaling", "--series", "2,4,6", "--strategies", "brg", "--out", dir_.string()}), 0) << err_.str();
  const std::string text = slurp(dir_ / "scaling.csv");
  EXPECT_NE(text.find("\nbrg,3,"), std::string::npos);
  EXPECT_NE(text.find("\nqubit-bound,3,"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "scaling_points.csv"));
  EXPECT_NE(out_.str().find("rough estimate"), std::string::npos);
}

#endif

}  // namespace
}  // namespace brg
