// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

// Test-only reference implementation of fermionic operators through the
// Jordan-Wigner mapping: a_p = Z x ... x Z x sigma^- x 1 x ... x 1 as an
// explicit Kronecker product over all 2L spin-orbitals. Shares no code with
// the library's bit-counting sign rule.

#ifndef RDMC_TESTS_ORACLE_JORDAN_WIGNER_HPP_
#define RDMC_TESTS_ORACLE_JORDAN_WIGNER_HPP_

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "rdmc/fock.hpp"
#include "rdmc/hamiltonian.hpp"

namespace oracle {

// Basis state index b of the 2^n space: bit p of b is the occupation of
// orbital p. The Kronecker factor for orbital 0 is the rightmost one.
inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Eigen::MatrixXd annihilator(int p, int n_orbitals) {
  Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d z;
  z << 1, 0, 0, -1;
  Eigen::Matrix2d lower;  // |0><1|: empties an occupied orbital
  lower << 0, 1, 0, 0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(1, 1);
  for (int k = n_orbitals - 1; k >= 0; --k) {
    const Eigen::Matrix2d& f = (k < p) ? z : (k == p ? lower : id);
    m = kron(m, f);
  }
  return m;
}

inline Eigen::MatrixXd creator(int p, int n_orbitals) {
  return annihilator(p, n_orbitals).transpose();
}

inline Eigen::MatrixXd number(int p, int n_orbitals) {
  return creator(p, n_orbitals) * annihilator(p, n_orbitals);
}

// Columns are the Fock-space unit vectors of the sector determinants.
inline Eigen::MatrixXd embedding(const rdmc::SectorBasis& basis) {
  const int n = basis.n_orbitals();
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(Eigen::Index{1} << n,
                                            static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) e(basis[j].bits(), j) = 1.0;
  return e;
}

// Hubbard Hamiltonian on the whole 2^(2L) Fock space, written directly from
// the operator definition.
inline Eigen::MatrixXd hubbard(const rdmc::HubbardParams& params) {
  const int n = 2 * params.sites;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<std::pair<int, int>> bonds;
  for (int i = 0; i + 1 < params.sites; ++i) bonds.emplace_back(i, i + 1);
  if (params.periodic && params.sites > 2) bonds.emplace_back(params.sites - 1, 0);
  for (auto [i, j] : bonds) {
    for (int s = 0; s < 2; ++s) {
      const int p = 2 * i + s;
      const int q = 2 * j + s;
      const Eigen::MatrixXd hop = creator(p, n) * annihilator(q, n);
      h -= params.hopping * (hop + hop.transpose());
    }
  }
  for (int p = 0; p < n; ++p) h += params.onsite[p] * number(p, n);
  for (int i = 0; i < params.sites; ++i) {
    h += params.interaction * number(2 * i, n) * number(2 * i + 1, n);
  }
  return h;
}

inline Eigen::MatrixXcd sector_matrix(const Eigen::MatrixXd& fock,
                                      const rdmc::SectorBasis& basis) {
  const Eigen::MatrixXd e = embedding(basis);
  return (e.transpose() * fock * e).cast<std::complex<double>>();
}

// Gamma(pq; rs) = <psi| a†_p a†_q a_s a_r |psi> over ordered distinct pairs,
// row-major, for a sector state.
inline Eigen::MatrixXcd two_rdm(const Eigen::VectorXcd& psi, const rdmc::SectorBasis& basis) {
  const int n = basis.n_orbitals();
  const Eigen::VectorXcd full = embedding(basis).cast<std::complex<double>>() * psi;
  std::vector<Eigen::MatrixXd> a(n), ad(n);
  for (int p = 0; p < n; ++p) {
    a[p] = annihilator(p, n);
    ad[p] = a[p].transpose();
  }
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p != q) pairs.emplace_back(p, q);
    }
  }
  // Two-particle annihilation images a_s a_r |psi> for every column pair.
  std::vector<Eigen::VectorXcd> images;
  for (auto [r, s] : pairs) {
    images.push_back((a[s] * a[r]).cast<std::complex<double>>() * full);
  }
  const auto dim = static_cast<Eigen::Index>(pairs.size());
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index row = 0; row < dim; ++row) {
    for (Eigen::Index col = 0; col < dim; ++col) {
      // <psi| a†_p a†_q a_s a_r |psi> = (a_q a_p psi)† (a_s a_r psi)
      g(row, col) = images[row].dot(images[col]);
    }
  }
  return g;
}

}  // namespace oracle

#endif  // RDMC_TESTS_ORACLE_JORDAN_WIGNER_HPP_
