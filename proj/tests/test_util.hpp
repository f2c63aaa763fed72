// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the unit tests.

#ifndef RDMC_TESTS_TEST_UTIL_HPP_
#define RDMC_TESTS_TEST_UTIL_HPP_

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>

namespace testing_util {

// Normalized complex vector with Gaussian components.
inline Eigen::VectorXcd random_state(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = {normal(rng), normal(rng)};
  return v / v.norm();
}

inline Eigen::VectorXcd random_real_state(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = normal(rng);
  return v / v.norm();
}

// Random density matrix of full rank with unit trace.
inline Eigen::MatrixXcd random_density_matrix(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = {normal(rng), normal(rng)};
  }
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline Eigen::MatrixXcd random_anti_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = {normal(rng), normal(rng)};
  }
  return 0.5 * (a - a.adjoint());
}

}  // namespace testing_util

#endif  // RDMC_TESTS_TEST_UTIL_HPP_
