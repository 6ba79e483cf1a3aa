// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "brg/fcidump.hpp"
#include "brg/fermion.hpp"
#include "brg/integrals.hpp"
#include "brg/sector.hpp"
#include "oracles.hpp"

namespace brg {
namespace {

const char* kHeader = "&FCI NORB=2,NELEC=2,MS2=0,\n ORBSYM=1,1,\n ISYM=1,\n&END\n";

double max_abs_diff(const IntegralSet& a, const IntegralSet& b) {
  double d = std::abs(a.e_core - b.e_core);
  d = std::max(d, (a.h - b.h).cwiseAbs().maxCoeff());
  for (std::size_t i = 0; i < a.v.data().size(); ++i) d = std::max(d, std::abs(a.v.data()[i] - b.v.data()[i]));
  return d;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Fcidump, CoreRecordOnly) {
  const auto doc = fcidump::parse(std::string(kHeader) + "0.5 0 0 0 0\n");
  EXPECT_EQ(doc.header.norb, 2);
  EXPECT_EQ(doc.header.nelec, 2);
  EXPECT_DOUBLE_EQ(doc.integrals.e_core, 0.5);
  EXPECT_EQ(doc.integrals.h.cwiseAbs().maxCoeff(), 0.0);
  for (double x : doc.integrals.v.data()) EXPECT_EQ(x, 0.0);
}

TEST(Fcidump, TwoElectronRecordFillsAllImages) {
  const auto doc = fcidump::parse(std::string(kHeader) + "0.25 1 2 1 2\n");
  const auto& v = doc.integrals.v;
  for (auto [p, q, r, s] : {std::array{0, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}, {1, 0, 1, 0}}) {
    EXPECT_DOUBLE_EQ(v(p, q, r, s), 0.25);
  }
  EXPECT_DOUBLE_EQ(v(0, 0, 1, 1), 0.0);
  EXPECT_DOUBLE_EQ(v(0, 1, 1, 1), 0.0);
}

TEST(Fcidump, OneElectronRecordIsSymmetric) {
  const auto doc = fcidump::parse(std::string(kHeader) + "-0.3 2 1 0 0\n");
  EXPECT_DOUBLE_EQ(doc.integrals.h(0, 1), -0.3);
  EXPECT_DOUBLE_EQ(doc.integrals.h(1, 0), -0.3);
}

TEST(Fcidump, SlashTerminatedLowercaseNamelist) {
  const auto doc = fcidump::parse(" &fci norb=2, nelec=2, ms2=0,\n orbsym=1,1, isym=1\n /\n 0.7 1 1 1 1\n 1.5D-01 0 0 0 0\n");
  EXPECT_EQ(doc.header.norb, 2);
  EXPECT_DOUBLE_EQ(doc.integrals.v(0, 0, 0, 0), 0.7);
  EXPECT_DOUBLE_EQ(doc.integrals.e_core, 0.15);
  EXPECT_EQ(doc.header.orbsym, (std::vector<int>{1, 1}));
}

TEST(Fcidump, Errors) {
  EXPECT_THROW(fcidump::parse(""), fcidump::ParseError);
  EXPECT_THROW(fcidump::parse("&FCI NELEC=2 &END\n"), fcidump::ParseError);
  EXPECT_THROW(fcidump::parse("&FCI NORB=2,NELEC=9 &END\n"), fcidump::ParseError);
  EXPECT_THROW(fcidump::parse(std::string(kHeader) + "0.1 3 1 1 1\n"), fcidump::ParseError);
  EXPECT_THROW(fcidump::parse(std::string(kHeader) + "0.1 1 2 1 2\n0.2 2 1 2 1\n"), fcidump::ParseError);
  EXPECT_NO_THROW(fcidump::parse(std::string(kHeader) + "0.1 1 2 1 2\n0.1 2 1 2 1\n"));
  EXPECT_THROW(fcidump::parse(std::string(kHeader) + "abc 1 1 1 1\n"), fcidump::ParseError);
  EXPECT_THROW(fcidump::parse("&FCI NORB=2,NELEC=2\n"), fcidump::ParseError);
  try {
    fcidump::parse(std::string(kHeader) + "0.1 1 1 1 1\n0.1 1 1\n");
    FAIL();
  } catch (const fcidump::ParseError& e) {
    EXPECT_EQ(e.line(), 6u);
  }
}

TEST(Fcidump, ZeroSetWritesOnlyCore) {
  const auto ints = IntegralSet::zeros(3);
  const std::string text = fcidump::write(fcidump::make_header(ints, 2), ints, 0.0);
  const auto body = text.substr(text.find("&END") + 4);
  std::istringstream in(body);
  std::string line;
  int records = 0;
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t") != std::string::npos) ++records;
  EXPECT_EQ(records, 1);
}

TEST(Fcidump, RoundTripAndThreshold) {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    auto ints = oracle::random_integrals(4, rng);
    ints.v(0, 1, 2, 3) = 0.0;
    ints.v.set_symmetric(0, 1, 2, 3, 3e-9);
    const auto header = fcidump::make_header(ints, 4);
    const std::string text = fcidump::write(header, ints, 0.0);
    EXPECT_LT(max_abs_diff(fcidump::parse(text).integrals, ints), 1e-12);
    EXPECT_EQ(fcidump::write(header, fcidump::parse(text).integrals, 0.0), text);
    const auto cut = fcidump::parse(fcidump::write(header, ints, 1e-8)).integrals;
    EXPECT_LT(max_abs_diff(cut, ints), 1e-8);
    EXPECT_EQ(cut.v(0, 1, 2, 3), 0.0);
  }
}

TEST(Fcidump, IndependentReaderGivesSameFci) {
  const auto sys = build_molecular_system(hydrogen_chain(2, 0.7414), "STO-3G");
  const std::string text = fcidump::write(fcidump::make_header(sys.integrals, 2), sys.integrals, 0.0);
  const auto other = oracle::read_fcidump(text);
  EXPECT_EQ(other.norb, 2);
  EXPECT_EQ(other.nelec, 2);
  const double e_lib = fci_ground_state(build_hamiltonian(fcidump::parse(text).integrals), 2, 1, 1).energy;
  const double e_oracle = oracle::sector_ground_energy(oracle::hamiltonian_matrix(other.integrals), 2, 1, 1);
  EXPECT_NEAR(e_lib, e_oracle, 1e-8);
  EXPECT_NEAR(e_lib, -1.1373, 1e-4);
}

// Integrals generated by an external quantum chemistry code for water in STO-3G.
TEST(Fcidump, WaterFileWithFrozenCore) {
  const auto doc = fcidump::read_file(std::string(BRG_TEST_DATA_DIR) + "/h2o_sto3g.fcidump");
  EXPECT_EQ(doc.header.norb, 7);
  EXPECT_EQ(doc.header.nelec, 10);
  EXPECT_NO_THROW(doc.integrals.validate());
  const auto oracle_doc = oracle::read_fcidump(slurp(std::string(BRG_TEST_DATA_DIR) + "/h2o_sto3g.fcidump"));
  EXPECT_LT(max_abs_diff(oracle_doc.integrals, doc.integrals), 1e-14);
  const double full = fci_ground_state(build_hamiltonian(doc.integrals), 7, 5, 5).energy;
  EXPECT_NEAR(full, -75.01257824109092, 1e-7);
  const auto frozen = freeze_core(doc.integrals, std::vector<int>{0});
  EXPECT_EQ(2 * frozen.n_spatial, 12);
  const double active = fci_ground_state(build_hamiltonian(frozen), 6, 4, 4).energy;
  EXPECT_NEAR(active, -75.01250015394263, 1e-7);
}

TEST(Fcidump, FileRoundTrip) {
  oracle::Rng rng(2);
  const auto ints = oracle::random_integrals(3, rng);
  const std::string path = ::testing::TempDir() + "/roundtrip.fcidump";
  fcidump::write_file(path, fcidump::make_header(ints, 2), ints);
  EXPECT_LT(max_abs_diff(fcidump::read_file(path).integrals, ints), 1e-12);
  EXPECT_THROW(fcidump::read_file(path + ".missing"), std::runtime_error);
}

}  // namespace
}  // namespace brg
