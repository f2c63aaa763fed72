// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmc/rdm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace rdmc {

namespace {

struct Transition {
  std::uint32_t bra;
  std::uint32_t ket;
  int sign;
};

// <bra| a†_p a†_q a_s a_r |ket> for every position, grouped by position
// index row * P + col.
std::vector<std::vector<Transition>> site_transitions(const SectorBasis& basis) {
  const PairSpace space(basis.n_orbitals());
  const int n = space.size();
  std::vector<std::vector<Transition>> table(static_cast<std::size_t>(n) * n);
  for (std::size_t ket = 0; ket < basis.size(); ++ket) {
    const Determinant det = basis[ket];
    for (int col = 0; col < n; ++col) {
      const auto [r, s] = space.pair(col);
      if (!det.occupied(r) || !det.occupied(s)) continue;
      for (int row = 0; row < n; ++row) {
        const auto [p, q] = space.pair(row);
        const LadderOp ops[] = {cre(p), cre(q), ann(s), ann(r)};
        auto res = apply_excitation_string(det, ops);
        if (!res) continue;
        auto bra = basis.index_of(res->det);
        if (!bra) continue;
        table[static_cast<std::size_t>(row) * n + col].push_back(
            {static_cast<std::uint32_t>(*bra), static_cast<std::uint32_t>(ket),
             res->sign});
      }
    }
  }
  return table;
}

void require_normalized(const Eigen::VectorXcd& psi, const char* what) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument(std::string(what) + " is not normalized");
  }
}

void require_compatible(const TwoRDM& a, const TwoRDM& b) {
  if (a.basis != b.basis) throw std::invalid_argument("2-RDM basis tags differ");
  if (!(a.space == b.space) || a.elements.rows() != b.elements.rows()) {
    throw std::invalid_argument("2-RDM dimensions differ");
  }
}

}  // namespace

std::vector<PairPosition> all_positions(const PairSpace& space) {
  std::vector<PairPosition> out;
  out.reserve(static_cast<std::size_t>(space.size()) * space.size());
  for (int r = 0; r < space.size(); ++r) {
    for (int c = 0; c < space.size(); ++c) out.push_back({r, c});
  }
  return out;
}

TwoRDM two_rdm_from_state(const Eigen::VectorXcd& psi, const SectorBasis& basis) {
  if (static_cast<std::size_t>(psi.size()) != basis.size()) {
    throw std::invalid_argument("state length does not match basis");
  }
  require_normalized(psi, "state");
  const PairSpace space(basis.n_orbitals());
  const int n = space.size();
  TwoRDM out{space, BasisTag::site, basis.particles(),
             Eigen::MatrixXcd::Zero(n, n)};
  const auto table = site_transitions(basis);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      std::complex<double> v = 0.0;
      for (const auto& t : table[static_cast<std::size_t>(row) * n + col]) {
        v += static_cast<double>(t.sign) * std::conj(psi(t.bra)) * psi(t.ket);
      }
      out.elements(row, col) = v;
    }
  }
  return out;
}

TwoRDM two_rdm_from_density_matrix(const Eigen::MatrixXcd& rho,
                                   const SectorBasis& basis) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  if (rho.rows() != d || rho.cols() != d) {
    throw std::invalid_argument("density matrix does not match basis");
  }
  if (std::abs(rho.trace() - 1.0) > 1e-10) {
    throw std::invalid_argument("density matrix trace deviates from 1");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
  const PairSpace space(basis.n_orbitals());
  const int n = space.size();
  TwoRDM out{space, BasisTag::site, basis.particles(),
             Eigen::MatrixXcd::Zero(n, n)};
  const auto table = site_transitions(basis);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      std::complex<double> v = 0.0;
      for (const auto& t : table[static_cast<std::size_t>(row) * n + col]) {
        v += static_cast<double>(t.sign) * rho(t.ket, t.bra);
      }
      out.elements(row, col) = v;
    }
  }
  return out;
}

TwoRDM to_eigenbasis(const TwoRDM& gamma, const PairEigenbasis& eig) {
  if (gamma.basis != BasisTag::site) {
    throw std::invalid_argument("2-RDM is already in the pair eigenbasis");
  }
  TwoRDM out = gamma;
  out.basis = BasisTag::pair_eigenbasis;
  out.elements = eig.vectors.transpose() * gamma.elements * eig.vectors.conjugate();
  return out;
}

namespace {

double checked_real(std::complex<double> e) {
  if (std::abs(e.imag()) > 1e-10) {
    throw std::domain_error("energy contraction has an imaginary part");
  }
  return e.real();
}

void require_matching(const TwoBodyReducedHamiltonian& h2, const TwoRDM& gamma) {
  if (h2.basis != gamma.basis) {
    throw std::invalid_argument("Hamiltonian and 2-RDM basis tags differ");
  }
  if (h2.coeffs.rows() != gamma.elements.rows() ||
      h2.coeffs.cols() != gamma.elements.cols()) {
    throw std::invalid_argument("Hamiltonian and 2-RDM dimensions differ");
  }
}

}  // namespace

double energy_from_rdm(const TwoBodyReducedHamiltonian& h2, const TwoRDM& gamma) {
  require_matching(h2, gamma);
  return checked_real(h2.coeffs.cwiseProduct(gamma.elements).sum());
}

double energy_from_rdm(const TwoBodyReducedHamiltonian& h2, const TwoRDM& gamma,
                       const CriticalSubset& subset) {
  require_matching(h2, gamma);
  std::complex<double> e = 0.0;
  for (const auto& pos : subset.members) {
    e += h2.coeffs(pos.row, pos.col) * gamma.elements(pos.row, pos.col);
  }
  return checked_real(e);
}

double hs_distance(const TwoRDM& a, const TwoRDM& b) {
  require_compatible(a, b);
  return (a.elements - b.elements).norm();
}

double hs_distance(const TwoRDM& a, const TwoRDM& b, const CriticalSubset& subset) {
  require_compatible(a, b);
  if (subset.dim != a.space.size()) {
    throw std::invalid_argument("subset dimension does not match 2-RDM");
  }
  double sum = 0.0;
  for (const auto& pos : subset.members) {
    sum += std::norm(a(pos) - b(pos));
  }
  return std::sqrt(sum);
}

double infidelity(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& target) {
  if (psi.size() != target.size()) {
    throw std::invalid_argument("state lengths differ");
  }
  require_normalized(psi, "state");
  require_normalized(target, "target state");
  const double overlap = std::norm(target.dot(psi));
  return std::clamp(1.0 - overlap, 0.0, 1.0);
}

Eigen::MatrixXcd project_rdm_symmetry(const Eigen::MatrixXcd& m,
                                      const PairSpace& space, BasisTag basis) {
  Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  if (basis != BasisTag::site) return h;
  const int n = space.size();
  Eigen::MatrixXcd a(n, n);
  for (int r = 0; r < n; ++r) {
    const int rs = space.swapped(r);
    for (int c = 0; c < n; ++c) {
      const int cs = space.swapped(c);
      a(r, c) = 0.25 * (h(r, c) - h(rs, c) - h(r, cs) + h(rs, cs));
    }
  }
  return a;
}

TwoRDM add_noise(const TwoRDM& gamma, const NoiseSpec& spec) {
  if (spec.epsilon < 0.0) throw std::invalid_argument("noise strength must be >= 0");
  const auto n = gamma.elements.rows();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::MatrixXcd r(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) r(i, j) = unif(rng);
  }
  if (spec.symmetrize) r = project_rdm_symmetry(r, gamma.space, gamma.basis);
  TwoRDM out = gamma;
  out.elements += spec.epsilon * r;
  return out;
}

std::vector<PairPosition> sz_zero_pattern(const PairSpace& space,
                                          std::optional<SectorSpec> sector) {
  struct Content {
    int up;
    int dn;
  };
  auto content = [&](int idx) {
    const auto [p, q] = space.pair(idx);
    const int up = (spin_of(p) == Spin::up) + (spin_of(q) == Spin::up);
    return Content{up, 2 - up};
  };
  auto exceeds = [&](Content c) {
    return sector && (c.up > sector->n_up || c.dn > sector->n_dn);
  };
  std::vector<PairPosition> out;
  for (int r = 0; r < space.size(); ++r) {
    const Content cr = content(r);
    for (int c = 0; c < space.size(); ++c) {
      const Content cc = content(c);
      if (cr.up != cc.up || exceeds(cr) || exceeds(cc)) out.push_back({r, c});
    }
  }
  return out;
}

double hermiticity_violation(const TwoRDM& gamma) {
  return (gamma.elements - gamma.elements.adjoint()).cwiseAbs().maxCoeff();
}

double antisymmetry_violation(const TwoRDM& gamma) {
  double worst = 0.0;
  const int n = gamma.space.size();
  for (int r = 0; r < n; ++r) {
    const int rs = gamma.space.swapped(r);
    for (int c = 0; c < n; ++c) {
      const int cs = gamma.space.swapped(c);
      worst = std::max(worst, std::abs(gamma.elements(r, c) + gamma.elements(rs, c)));
      worst = std::max(worst, std::abs(gamma.elements(r, c) + gamma.elements(r, cs)));
    }
  }
  return worst;
}

std::complex<double> pair_trace(const TwoRDM& gamma) {
  return gamma.elements.trace();
}

double min_eigenvalue(const TwoRDM& gamma) {
  Eigen::MatrixXcd h = 0.5 * (gamma.elements + gamma.elements.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

RdmProbe::RdmProbe(const SectorBasis& basis, std::vector<PairPosition> positions)
    : dim_(basis.size()), positions_(std::move(positions)) {
  const PairSpace space(basis.n_orbitals());
  const auto n = static_cast<std::size_t>(space.size());
  const auto table = site_transitions(basis);
  offsets_.reserve(positions_.size() + 1);
  offsets_.push_back(0);
  for (const auto& pos : positions_) {
    for (const auto& t : table[static_cast<std::size_t>(pos.row) * n +
                               static_cast<std::size_t>(pos.col)]) {
      terms_.push_back({t.bra, t.ket, static_cast<double>(t.sign)});
    }
    offsets_.push_back(terms_.size());
  }
}

RdmProbe::RdmProbe(const SectorBasis& basis, std::vector<PairPosition> positions,
                   const PairEigenbasis& eig)
    : dim_(basis.size()), positions_(std::move(positions)) {
  const PairSpace space(basis.n_orbitals());
  const int n = space.size();
  const auto d = static_cast<Eigen::Index>(dim_);
  if (eig.vectors.rows() != n) {
    throw std::invalid_argument("eigenbasis does not match pair space");
  }
  const auto table = site_transitions(basis);
  offsets_.reserve(positions_.size() + 1);
  offsets_.push_back(0);
  Eigen::MatrixXcd kernel(d, d);
  for (const auto& pos : positions_) {
    // Gamma'(k,l) = sum_ab V(a,k) Gamma(a,b) conj(V(b,l))
    kernel.setZero();
    for (int a = 0; a < n; ++a) {
      const std::complex<double> va = eig.vectors(a, pos.row);
      if (va == 0.0) continue;
      for (int b = 0; b < n; ++b) {
        const std::complex<double> w = va * std::conj(eig.vectors(b, pos.col));
        if (w == 0.0) continue;
        for (const auto& t : table[static_cast<std::size_t>(a) * n + b]) {
          kernel(t.bra, t.ket) += w * static_cast<double>(t.sign);
        }
      }
    }
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        if (kernel(i, j) != 0.0) {
          terms_.push_back({static_cast<std::uint32_t>(i),
                            static_cast<std::uint32_t>(j), kernel(i, j)});
        }
      }
    }
    offsets_.push_back(terms_.size());
  }
}

void RdmProbe::evaluate(const Eigen::VectorXcd& psi,
                        std::span<std::complex<double>> out) const {
  if (static_cast<std::size_t>(psi.size()) != dim_ || out.size() != positions_.size()) {
    throw std::invalid_argument("probe size mismatch");
  }
  for (std::size_t k = 0; k < positions_.size(); ++k) {
    std::complex<double> v = 0.0;
    for (std::size_t t = offsets_[k]; t < offsets_[k + 1]; ++t) {
      const Term& term = terms_[t];
      v += term.coeff * std::conj(psi(term.bra)) * psi(term.ket);
    }
    out[k] = v;
  }
}

std::vector<std::complex<double>> RdmProbe::evaluate(const Eigen::VectorXcd& psi) const {
  std::vector<std::complex<double>> out(positions_.size());
  evaluate(psi, out);
  return out;
}

}  // namespace rdmc
