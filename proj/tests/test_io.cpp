// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "rdmc/fock.hpp"
#include "rdmc/hamiltonian.hpp"
#include "rdmc/io.hpp"
#include "rdmc/rdm.hpp"
#include "test_util.hpp"

namespace rdmc {
namespace {

TwoRDM random_rdm(std::uint64_t seed) {
  const SectorBasis basis = enumerate_sector(3, 2, 1);
  std::mt19937_64 rng(seed);
  return two_rdm_from_state(testing_util::random_state(basis.size(), rng), basis);
}

bool bit_equal(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real() || a(i).imag() != b(i).imag()) return false;
  }
  return true;
}

TEST(FormatDouble, ShortestRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, (i % 40) - 20);
    EXPECT_EQ(std::stod(format_double(x)), x);
    EXPECT_EQ(std::stod(format_double17(x)), x);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double17(0.1), "0.10000000000000001");
}

TEST(TwoRdmFile, RoundTripIsBitExact) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const TwoRDM g = random_rdm(seed);
    std::stringstream ss;
    write_two_rdm(ss, g);
    const TwoRDM back = read_two_rdm(ss);
    EXPECT_EQ(back.space, g.space);
    EXPECT_EQ(back.basis, g.basis);
    EXPECT_EQ(back.particles, g.particles);
    EXPECT_TRUE(bit_equal(back.elements, g.elements));
  }
}

TEST(TwoRdmFile, HeaderLayout) {
  std::stringstream ss;
  write_two_rdm(ss, random_rdm(4));
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "rdmc-two-rdm 1");
  std::getline(ss, line);
  EXPECT_EQ(line, "basis site");
  std::getline(ss, line);
  EXPECT_EQ(line, "orbitals 6");
  std::getline(ss, line);
  EXPECT_EQ(line, "particles 3");
  std::getline(ss, line);
  EXPECT_EQ(line, "pair-order ordered-distinct-row-major");
  std::getline(ss, line);
  EXPECT_EQ(line, "dim 30");
}

TEST(TwoRdmFile, MalformedInputIsRejected) {
  std::stringstream good;
  write_two_rdm(good, random_rdm(5));
  const std::string text = good.str();

  auto rejects = [](const std::string& s) {
    std::istringstream is(s);
    EXPECT_THROW(read_two_rdm(is), FormatError) << s.substr(0, 60);
  };
  rejects("");
  rejects("rdmc-two-rdm 2\n");
  rejects("not-an-rdm 1\n");
  // Truncated body.
  rejects(text.substr(0, text.size() / 2));
  // Mismatched dimension.
  std::string bad_dim = text;
  bad_dim.replace(bad_dim.find("dim 30"), 6, "dim 31");
  rejects(bad_dim);
  // Unknown basis tag.
  std::string bad_basis = text;
  bad_basis.replace(bad_basis.find("basis site"), 10, "basis spin");
  rejects(bad_basis);
  // Non-numeric entry.
  std::string bad_number = text;
  const auto body = bad_number.find("dim 30\n") + 7;
  bad_number.replace(body, 1, "x");
  rejects(bad_number);
}

TEST(TwoRdmFile, SaveAndLoad) {
  const auto dir = std::filesystem::temp_directory_path() / "rdmc_test_io";
  std::filesystem::create_directories(dir);
  const TwoRDM g = random_rdm(6);
  save_two_rdm(dir / "g.txt", g);
  EXPECT_TRUE(bit_equal(load_two_rdm(dir / "g.txt").elements, g.elements));
  EXPECT_ANY_THROW(load_two_rdm(dir / "missing.txt"));
  std::filesystem::remove_all(dir);
}

TEST(SubsetFile, RoundTrip) {
  const TwoBodyReducedHamiltonian h2 = reduce_to_two_body(reference_model(), 3);
  const CriticalSubset s = critical_subset(h2);
  ASSERT_EQ(s.size(), 184u);
  std::stringstream ss;
  write_subset(ss, s);
  const CriticalSubset back = read_subset(ss);
  EXPECT_EQ(back.basis, s.basis);
  EXPECT_EQ(back.dim, s.dim);
  EXPECT_EQ(back.members, s.members);
}

TEST(SubsetFile, MalformedInputIsRejected) {
  auto rejects = [](const std::string& s) {
    std::istringstream is(s);
    EXPECT_THROW(read_subset(is), FormatError) << s;
  };
  rejects("rdmc-critical-subset 1\nbasis site\ndim 30\ncount 2\n0 0\n");
  rejects("rdmc-critical-subset 1\nbasis site\ndim 30\ncount 1\n0 30\n");
  rejects("rdmc-critical-subset 1\nbasis site\ndim 30\ncount 2\n1 1\n0 0\n");
  rejects("rdmc-critical-subset 1\nbasis site\ndim 30\ncount 2\n0 0\n0 0\n");
  rejects("rdmc-critical-subset 1\nbasis site\ndim 30\ncount -1\n");
  rejects("rdmc-critical-subset 1\nbasis site\ndim 30\ncount 901\n");
  std::istringstream ok("rdmc-critical-subset 1\nbasis pair-eigenbasis\ndim 30\ncount 2\n0 0\n3 4\n");
  const CriticalSubset s = read_subset(ok);
  EXPECT_EQ(s.basis, BasisTag::pair_eigenbasis);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.members[1], (PairPosition{3, 4}));
}

TEST(StateFile, RoundTripIsBitExact) {
  std::mt19937_64 rng(8);
  const Eigen::VectorXcd psi = testing_util::random_state(9, rng);
  std::stringstream ss;
  write_state(ss, psi);
  const Eigen::VectorXcd back = read_state(ss);
  ASSERT_EQ(back.size(), psi.size());
  EXPECT_TRUE(bit_equal(back, psi));
}

TEST(StateFile, MalformedInputIsRejected) {
  auto rejects = [](const std::string& s) {
    std::istringstream is(s);
    EXPECT_THROW(read_state(is), FormatError) << s;
  };
  rejects("rdmc-state 1\ndim 0\n");
  rejects("rdmc-state 1\ndim 2\n1 0\n");
  rejects("rdmc-state 1\ndim 2\n1 0\nfoo 0\n");
  rejects("rdmc-state 3\ndim 1\n1 0\n");
}

TEST(TraceCsv, HeaderAndRows) {
  AnnealTrace t;
  TraceRow r0;
  r0.k = 0;
  r0.d_partial = 0.25;
  r0.d_full = std::numeric_limits<double>::quiet_NaN();
  r0.temperature = 0.01;
  r0.max_angle = 0.5;
  TraceRow r1 = r0;
  r1.k = 1;
  r1.accepted = true;
  r1.generator = 7;
  r1.clamped = true;
  t.rows = {r0, r1};
  std::stringstream ss;
  write_trace_csv(ss, t);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "# rdmc-trace v1");
  std::getline(ss, line);
  EXPECT_EQ(line, "k,D_partial,D_full,energy_dev,infidelity,T,theta_max,accepted,generator_id,clamped");
  std::getline(ss, line);
  EXPECT_EQ(line.substr(0, 7), "0,0.25,");
  EXPECT_EQ(line.substr(line.size() - 7), ",0,-1,0");
  std::getline(ss, line);
  EXPECT_EQ(line.substr(line.size() - 6), ",1,7,1");
  EXPECT_FALSE(std::getline(ss, line));
}

}  // namespace
}  // namespace rdmc
