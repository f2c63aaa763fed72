// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

// Two-particle reduced density matrices over ordered distinct pairs:
//   Gamma(pq; rs) = <psi| a†_p a†_q a_s a_r |psi>
// plus the distances, energy contraction and noise model built on them.

#ifndef RDMC_RDM_HPP_
#define RDMC_RDM_HPP_

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rdmc/fock.hpp"
#include "rdmc/hamiltonian.hpp"
#include "rdmc/pair_space.hpp"

namespace rdmc {

struct TwoRDM {
  PairSpace space;
  BasisTag basis = BasisTag::site;
  int particles = 0;
  Eigen::MatrixXcd elements;

  std::complex<double> operator()(PairPosition pos) const {
    return elements(pos.row, pos.col);
  }
};

// Throws std::invalid_argument when | ||psi|| - 1 | > 1e-10 or the vector
// length does not match the basis.
TwoRDM two_rdm_from_state(const Eigen::VectorXcd& psi, const SectorBasis& basis);

// Throws std::invalid_argument when |tr(rho) - 1| > 1e-10, rho is not
// Hermitian, or rho has an eigenvalue below -1e-10.
TwoRDM two_rdm_from_density_matrix(const Eigen::MatrixXcd& rho,
                                   const SectorBasis& basis);

// Change of representation matching to_eigenbasis() for the Hamiltonian:
// Gamma' = V^T Gamma conj(V), which keeps sum K'(a,b) Gamma'(a,b) equal to
// sum K(a,b) Gamma(a,b). For a real V this is V† Gamma V.
TwoRDM to_eigenbasis(const TwoRDM& gamma, const PairEigenbasis& eig);

// sum_{a,b} K(a,b) Gamma(a,b), optionally restricted to a position subset.
// Throws std::invalid_argument on a basis or dimension mismatch and
// std::domain_error if the imaginary part exceeds 1e-10.
double energy_from_rdm(const TwoBodyReducedHamiltonian& h2, const TwoRDM& gamma);
double energy_from_rdm(const TwoBodyReducedHamiltonian& h2, const TwoRDM& gamma,
                       const CriticalSubset& subset);

// Frobenius norm of a - b, over all positions or over the listed subset
// positions (each listed position counted once).
double hs_distance(const TwoRDM& a, const TwoRDM& b);
double hs_distance(const TwoRDM& a, const TwoRDM& b, const CriticalSubset& subset);

// 1 - |<psi|target>|^2 for normalized pure states.
double infidelity(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& target);

struct NoiseSpec {
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  bool symmetrize = true;
};

// gamma + epsilon * R with R_ab ~ U[-1, 1] drawn row-major from a
// mt19937_64 stream seeded with spec.seed. With `symmetrize`, R is first
// projected onto the Hermitian (and, in the site basis, pair-antisymmetric)
// subspace. Trace and positivity are not restored.
TwoRDM add_noise(const TwoRDM& gamma, const NoiseSpec& spec);

// Hermitian and pair-antisymmetric projection of a pair-space matrix.
Eigen::MatrixXcd project_rdm_symmetry(const Eigen::MatrixXcd& m,
                                      const PairSpace& space, BasisTag basis);

// Site-basis positions that vanish for any S_z eigenstate: the two pairs
// carry different S_z. With a sector, positions whose pairs need more up or
// down particles than the sector holds are included too.
std::vector<PairPosition> sz_zero_pattern(const PairSpace& space,
                                          std::optional<SectorSpec> sector = {});

// Invariant diagnostics.
double hermiticity_violation(const TwoRDM& gamma);
double antisymmetry_violation(const TwoRDM& gamma);
std::complex<double> pair_trace(const TwoRDM& gamma);
double min_eigenvalue(const TwoRDM& gamma);

// Evaluates a fixed list of 2-RDM positions of a sector state. Each position
// is a quadratic form psi† M psi; the sparse M are built once, so repeated
// evaluation costs a few multiply-adds per position.
class RdmProbe {
 public:
  // Site-basis positions.
  RdmProbe(const SectorBasis& basis, std::vector<PairPosition> positions);
  // Positions in the pair eigenbasis `eig`.
  RdmProbe(const SectorBasis& basis, std::vector<PairPosition> positions,
           const PairEigenbasis& eig);

  const std::vector<PairPosition>& positions() const { return positions_; }
  std::size_t size() const { return positions_.size(); }
  std::size_t dimension() const { return dim_; }

  void evaluate(const Eigen::VectorXcd& psi,
                std::span<std::complex<double>> out) const;
  std::vector<std::complex<double>> evaluate(const Eigen::VectorXcd& psi) const;

 private:
  struct Term {
    std::uint32_t bra;
    std::uint32_t ket;
    std::complex<double> coeff;
  };

  std::size_t dim_;
  std::vector<PairPosition> positions_;
  std::vector<std::size_t> offsets_;
  std::vector<Term> terms_;
};

// All positions of a pair space, row-major.
std::vector<PairPosition> all_positions(const PairSpace& space);

}  // namespace rdmc

#endif  // RDMC_RDM_HPP_
