// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "oracle/jordan_wigner.hpp"
#include "rdmc/fock.hpp"

namespace rdmc {
namespace {

Determinant det_of(std::initializer_list<int> orbitals) {
  std::vector<int> v(orbitals);
  return Determinant::from_orbitals(v);
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Sign and image of a single ladder operator from the Jordan-Wigner matrix.
std::optional<SignedDeterminant> oracle_apply(const Eigen::MatrixXd& op, Determinant det) {
  for (Eigen::Index row = 0; row < op.rows(); ++row) {
    const double v = op(row, det.bits());
    if (v != 0.0) {
      return SignedDeterminant{Determinant(static_cast<std::uint32_t>(row)), v > 0 ? 1 : -1};
    }
  }
  return std::nullopt;
}

TEST(SpinOrbital, FlatIndexIsBijection) {
  for (int L = 1; L <= 4; ++L) {
    std::vector<bool> seen(2 * L, false);
    for (int site = 0; site < L; ++site) {
      for (Spin s : {Spin::up, Spin::down}) {
        const int p = SpinOrbital{site, s}.flat();
        ASSERT_GE(p, 0);
        ASSERT_LT(p, 2 * L);
        EXPECT_FALSE(seen[p]);
        seen[p] = true;
        EXPECT_EQ(SpinOrbital::from_flat(p), (SpinOrbital{site, s}));
        EXPECT_EQ(spin_of(p), s);
        EXPECT_EQ(site_of(p), site);
      }
    }
  }
}

TEST(EnumerateSector, SingleOrbital) {
  const SectorBasis b = enumerate_sector(1, 1, 0);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].bits(), 1u);
}

TEST(EnumerateSector, ReferenceSectorHasNineDeterminants) {
  EXPECT_EQ(enumerate_sector(3, 2, 1).size(), 9u);
}

TEST(EnumerateSector, FullShell) {
  const SectorBasis b = enumerate_sector(3, 3, 3);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].bits(), 0b111111u);
}

TEST(EnumerateSector, BinomialCountsAndOrder) {
  for (int L = 1; L <= 6; ++L) {
    for (int nu = 0; nu <= L; ++nu) {
      for (int nd = 0; nd <= L; ++nd) {
        const SectorBasis b = enumerate_sector(L, nu, nd);
        ASSERT_EQ(static_cast<long long>(b.size()), binomial(L, nu) * binomial(L, nd))
            << L << " " << nu << " " << nd;
        for (std::size_t i = 0; i < b.size(); ++i) {
          EXPECT_EQ(b[i].count_spin(Spin::up, L), nu);
          EXPECT_EQ(b[i].count_spin(Spin::down, L), nd);
          EXPECT_EQ(b.index_of(b[i]), i);
          if (i > 0) {
            EXPECT_LT(b[i - 1].bits(), b[i].bits());
          }
        }
      }
    }
  }
}

TEST(EnumerateSector, RejectsInvalidInput) {
  EXPECT_THROW(enumerate_sector(17, 1, 1), std::invalid_argument);
  EXPECT_THROW(enumerate_sector(0, 0, 0), std::invalid_argument);
  EXPECT_THROW(enumerate_sector(3, 4, 0), std::invalid_argument);
  EXPECT_THROW(enumerate_sector(3, 0, -1), std::invalid_argument);
}

TEST(Ladder, AnnihilationExamples) {
  auto r = apply_annihilation(det_of({0, 1}), 0);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->det, det_of({1}));
  EXPECT_EQ(r->sign, 1);

  r = apply_annihilation(det_of({0, 1}), 1);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->det, det_of({0}));
  EXPECT_EQ(r->sign, -1);

  // a_5 a†_0 a†_2 a†_5 |vac>: moving a_5 past a†_0 and a†_2 gives (+1)(-1)^2.
  r = apply_annihilation(det_of({0, 2, 5}), 5);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->det, det_of({0, 2}));
  EXPECT_EQ(r->sign, 1);

  EXPECT_FALSE(apply_annihilation(det_of({0, 2}), 1));
}

TEST(Ladder, CreationExamples) {
  auto r = apply_creation(Determinant{}, 3);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->det, det_of({3}));
  EXPECT_EQ(r->sign, 1);

  EXPECT_FALSE(apply_creation(det_of({3}), 3));

  // a†_2 a†_1 a†_4 |vac> = -a†_1 a†_2 a†_4 |vac>.
  r = apply_creation(det_of({1, 4}), 2);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->det, det_of({1, 2, 4}));
  EXPECT_EQ(r->sign, -1);
}

TEST(Ladder, ExcitationStringExamples) {
  const std::vector<LadderOp> pair = {cre(0), cre(1)};
  auto r = apply_excitation_string(Determinant{}, pair);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->det, det_of({0, 1}));
  EXPECT_EQ(r->sign, 1);

  const std::vector<LadderOp> number = {cre(0), cre(1), ann(1), ann(0)};
  r = apply_excitation_string(det_of({0, 1}), number);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->det, det_of({0, 1}));
  EXPECT_EQ(r->sign, 1);

  // Oracle: Jordan-Wigner matrices multiplied in the same order.
  const std::vector<LadderOp> hop = {cre(1), cre(2), ann(2), ann(0)};
  const int n = 6;
  const Eigen::MatrixXd m = oracle::creator(1, n) * oracle::creator(2, n) *
                            oracle::annihilator(2, n) * oracle::annihilator(0, n);
  const auto expected = oracle_apply(m, det_of({0, 2}));
  ASSERT_TRUE(expected);
  r = apply_excitation_string(det_of({0, 2}), hop);
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, *expected);
  // Recorded oracle value.
  EXPECT_EQ(r->det, det_of({1, 2}));
  EXPECT_EQ(r->sign, 1);
}

TEST(Ladder, RejectsOutOfRangeOrbital) {
  EXPECT_THROW(apply_creation(Determinant{}, 32), std::out_of_range);
  EXPECT_THROW(apply_annihilation(Determinant{}, -1), std::out_of_range);
}

// Exhaustive over all determinants of up to three sites.
class FockExhaustive : public ::testing::TestWithParam<int> {};

TEST_P(FockExhaustive, MatchesJordanWignerOracle) {
  const int n = 2 * GetParam();
  for (int p = 0; p < n; ++p) {
    const Eigen::MatrixXd a = oracle::annihilator(p, n);
    const Eigen::MatrixXd ad = a.transpose();
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      const Determinant d(bits);
      EXPECT_EQ(apply_annihilation(d, p), oracle_apply(a, d)) << bits << " " << p;
      EXPECT_EQ(apply_creation(d, p), oracle_apply(ad, d)) << bits << " " << p;
    }
  }
}

TEST_P(FockExhaustive, Anticommutation) {
  const int n = 2 * GetParam();
  using Apply = std::optional<SignedDeterminant> (*)(Determinant, int);
  auto compose = [](Apply first, Apply second, Determinant d, int p, int q) {
    auto a = first(d, p);
    if (!a) return std::optional<SignedDeterminant>{};
    auto b = second(a->det, q);
    if (!b) return std::optional<SignedDeterminant>{};
    return std::optional<SignedDeterminant>{SignedDeterminant{b->det, a->sign * b->sign}};
  };
  const Apply kinds[2] = {&apply_annihilation, &apply_creation};
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    const Determinant d(bits);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        if (p == q) continue;
        for (Apply x : kinds) {
          for (Apply y : kinds) {
            // X_q Y_p |d> versus Y_p X_q |d>.
            const auto pq = compose(y, x, d, p, q);
            const auto qp = compose(x, y, d, q, p);
            ASSERT_EQ(pq.has_value(), qp.has_value());
            if (pq) {
              EXPECT_EQ(pq->det, qp->det);
              EXPECT_EQ(pq->sign, -qp->sign);
            }
          }
        }
      }
    }
  }
}

TEST_P(FockExhaustive, ExclusionAndRoundTrip) {
  const int n = 2 * GetParam();
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    const Determinant d(bits);
    for (int p = 0; p < n; ++p) {
      const auto once = apply_creation(d, p);
      if (once) {
        EXPECT_FALSE(apply_creation(once->det, p));
      }
      if (d.occupied(p)) {
        const auto removed = apply_annihilation(d, p);
        ASSERT_TRUE(removed);
        const auto back = apply_creation(removed->det, p);
        ASSERT_TRUE(back);
        EXPECT_EQ(back->det, d);
        EXPECT_EQ(removed->sign * back->sign, 1);
      } else {
        EXPECT_FALSE(apply_annihilation(d, p));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Sites, FockExhaustive, ::testing::Values(1, 2, 3));

TEST(OperatorMatrix, MatchesOracleOnFullFockSpace) {
  const SectorBasis fock = enumerate_fock_space(2);
  const int n = 4;
  const std::vector<OperatorTerm> terms = {
      {{0.5, 0.0}, {cre(0), ann(2)}},
      {{0.0, 1.5}, {cre(1), cre(3), ann(2), ann(0)}},
  };
  const Eigen::MatrixXcd m = operator_matrix(fock, terms);
  const Eigen::MatrixXcd expected =
      0.5 * (oracle::creator(0, n) * oracle::annihilator(2, n)).cast<std::complex<double>>() +
      std::complex<double>(0.0, 1.5) *
          (oracle::creator(1, n) * oracle::creator(3, n) * oracle::annihilator(2, n) *
           oracle::annihilator(0, n))
              .cast<std::complex<double>>();
  // enumerate_fock_space is in ascending bitmask order, i.e. the oracle order.
  EXPECT_LT((m - expected).cwiseAbs().maxCoeff(), 1e-15);
}

}  // namespace
}  // namespace rdmc
