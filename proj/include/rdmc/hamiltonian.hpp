// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

// Inhomogeneous Fermi-Hubbard chain, its two-particle reduced Hamiltonian,
// the critical subset of pair-space positions and the pair-space eigenbasis.

#ifndef RDMC_HAMILTONIAN_HPP_
#define RDMC_HAMILTONIAN_HPP_

#include <Eigen/Dense>

#include <vector>

#include "rdmc/fock.hpp"
#include "rdmc/pair_space.hpp"

namespace rdmc {

//   H = -t sum_<ij>,s (a†_is a_js + h.c.) + sum_is eps_is n_is
//       + U sum_i n_i,up n_i,dn
// `onsite` is indexed by flat spin-orbital (2 * site + spin).
struct HubbardParams {
  int sites = 3;
  double hopping = 1.0;
  double interaction = 4.0;
  std::vector<double> onsite;
  bool periodic = false;

  // Throws std::invalid_argument on U < 0, a wrong-length `onsite`, or a
  // site count outside [1, kMaxSites]. U = 0 is accepted so that free and
  // zero models can be built; the experiment runner requires U > 0.
  void validate() const;
};

struct SectorSpec {
  int n_up = 2;
  int n_dn = 1;
  int particles() const { return n_up + n_dn; }
};

// Three-site open chain, t = 1, U = 4, sector (2, 1). The end-site up-spin
// energies are zero; the remaining values are generic.
HubbardParams reference_model();
SectorSpec reference_sector();

// Single-particle matrix h_pq over flat spin-orbitals (hopping + on-site).
Eigen::MatrixXd one_body_matrix(const HubbardParams& params);

// Sector matrix of the Hubbard Hamiltonian, assembled element-wise from
// ladder-operator strings. Throws std::invalid_argument if params.sites
// differs from basis.sites().
Eigen::MatrixXcd build_hubbard(const HubbardParams& params,
                               const SectorBasis& basis);

// Pair-space coefficients K such that, for every N-particle state,
//   <H> = sum_{a,b} K(a, b) * Gamma(a, b)
// with Gamma(pq; rs) = <a†_p a†_q a_s a_r>.
//
// `coeffs` holds the normal-ordered transcription of the Hamiltonian: a
// one-body term h_pr a†_p a_r becomes h_pr / (N - 1) at every (p q; r q),
// and U n_i,up n_i,dn sits at (i,up i,dn; i,up i,dn). This matrix is
// Hermitian but not antisymmetric within pairs; antisymmetrized() projects
// it onto the 2-RDM symmetry class without changing any contraction with a
// valid 2-RDM.
struct TwoBodyReducedHamiltonian {
  PairSpace space;
  int particles = 0;
  BasisTag basis = BasisTag::site;
  Eigen::MatrixXcd coeffs;

  TwoBodyReducedHamiltonian antisymmetrized() const;
};

// Throws std::invalid_argument for particles < 2.
TwoBodyReducedHamiltonian reduce_to_two_body(const HubbardParams& params,
                                             int particles);

// Pair-space positions where the reduced Hamiltonian is non-zero, closed
// under the symmetries of a 2-RDM: Hermitian conjugation, and in the site
// basis also the exchange of orbitals within either pair. Members are sorted.
struct CriticalSubset {
  BasisTag basis = BasisTag::site;
  int dim = 0;
  std::vector<PairPosition> members;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  bool contains(PairPosition pos) const;
};

CriticalSubset critical_subset(const TwoBodyReducedHamiltonian& h2,
                               double tol = 1e-12);

// Symmetric closure of an arbitrary position set (see CriticalSubset).
CriticalSubset symmetry_closure(const std::vector<PairPosition>& seeds,
                                const PairSpace& space, BasisTag basis);

struct GroundStateResult {
  double energy = 0.0;
  Eigen::VectorXcd state;
  double first_excited_energy = 0.0;
  Eigen::VectorXcd first_excited;
  double gap = 0.0;
  bool degenerate = false;
};

// Lowest two eigenpairs of a Hermitian sector matrix. `degenerate` is set
// when gap <= degeneracy_tol; callers must not make completion claims then.
// Throws std::invalid_argument when max |H - H†| > 1e-12.
GroundStateResult ground_state(const Eigen::MatrixXcd& hamiltonian,
                               double degeneracy_tol = 1e-8);

// Unitary V with V† K V diagonal, eigenvalues ascending. Each column is
// phase-fixed so its largest-magnitude component is real and positive
// (first such component on ties).
struct PairEigenbasis {
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd values;
};

PairEigenbasis pair_eigenbasis(const TwoBodyReducedHamiltonian& h2);

// Reduced Hamiltonian expressed in the pair eigenbasis (V† K V).
TwoBodyReducedHamiltonian to_eigenbasis(const TwoBodyReducedHamiltonian& h2,
                                        const PairEigenbasis& eig);

}  // namespace rdmc

#endif  // RDMC_HAMILTONIAN_HPP_
