// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmc/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace rdmc {

std::string_view to_string(BasisTag tag) {
  return tag == BasisTag::site ? "site" : "pair-eigenbasis";
}

BasisTag basis_tag_from_string(std::string_view s) {
  if (s == "site") return BasisTag::site;
  if (s == "pair-eigenbasis") return BasisTag::pair_eigenbasis;
  throw std::invalid_argument("unknown basis tag '" + std::string(s) + "'");
}

void HubbardParams::validate() const {
  if (sites < 1 || sites > kMaxSites) {
    throw std::invalid_argument("sites must lie in [1, 16]");
  }
  if (!(interaction >= 0.0)) {
    throw std::invalid_argument("interaction U must be non-negative");
  }
  if (static_cast<int>(onsite.size()) != 2 * sites) {
    throw std::invalid_argument("onsite needs 2 * sites entries");
  }
}

HubbardParams reference_model() {
  HubbardParams p;
  p.sites = 3;
  p.hopping = 1.0;
  p.interaction = 4.0;
  p.onsite = {0.00, 0.30, -0.20, 0.15, 0.00, 0.10};
  return p;
}

SectorSpec reference_sector() { return {2, 1}; }

namespace {

std::vector<std::pair<int, int>> bonds(const HubbardParams& params) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i + 1 < params.sites; ++i) out.emplace_back(i, i + 1);
  if (params.periodic && params.sites > 2) out.emplace_back(params.sites - 1, 0);
  return out;
}

}  // namespace

Eigen::MatrixXd one_body_matrix(const HubbardParams& params) {
  params.validate();
  const int n = 2 * params.sites;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int p = 0; p < n; ++p) h(p, p) = params.onsite[static_cast<std::size_t>(p)];
  for (auto [i, j] : bonds(params)) {
    for (Spin s : {Spin::up, Spin::down}) {
      const int p = SpinOrbital{i, s}.flat();
      const int q = SpinOrbital{j, s}.flat();
      h(p, q) -= params.hopping;
      h(q, p) -= params.hopping;
    }
  }
  return h;
}

Eigen::MatrixXcd build_hubbard(const HubbardParams& params,
                               const SectorBasis& basis) {
  params.validate();
  if (params.sites != basis.sites()) {
    throw std::invalid_argument("model and basis disagree on site count");
  }
  const Eigen::MatrixXd h = one_body_matrix(params);
  std::vector<OperatorTerm> terms;
  for (int p = 0; p < h.rows(); ++p) {
    for (int r = 0; r < h.cols(); ++r) {
      if (h(p, r) != 0.0) terms.push_back({h(p, r), {cre(p), ann(r)}});
    }
  }
  for (int i = 0; i < params.sites; ++i) {
    const int up = SpinOrbital{i, Spin::up}.flat();
    const int dn = SpinOrbital{i, Spin::down}.flat();
    terms.push_back({params.interaction, {cre(up), ann(up), cre(dn), ann(dn)}});
  }
  return operator_matrix(basis, terms);
}

TwoBodyReducedHamiltonian TwoBodyReducedHamiltonian::antisymmetrized() const {
  const int n = space.size();
  Eigen::MatrixXcd a(n, n);
  for (int row = 0; row < n; ++row) {
    const int row_sw = space.swapped(row);
    for (int col = 0; col < n; ++col) {
      const int col_sw = space.swapped(col);
      a(row, col) = 0.25 * (coeffs(row, col) - coeffs(row_sw, col) -
                            coeffs(row, col_sw) + coeffs(row_sw, col_sw));
    }
  }
  TwoBodyReducedHamiltonian out = *this;
  out.coeffs = 0.5 * (a + a.adjoint());
  return out;
}

TwoBodyReducedHamiltonian reduce_to_two_body(const HubbardParams& params,
                                             int particles) {
  if (particles < 2) {
    throw std::invalid_argument("reduced Hamiltonian needs N >= 2");
  }
  const Eigen::MatrixXd h = one_body_matrix(params);
  const PairSpace space(2 * params.sites);
  const double fold = 1.0 / static_cast<double>(particles - 1);

  TwoBodyReducedHamiltonian out{space, particles, BasisTag::site,
                                Eigen::MatrixXcd::Zero(space.size(), space.size())};
  for (int row = 0; row < space.size(); ++row) {
    const auto [p, q] = space.pair(row);
    for (int r = 0; r < space.n_orbitals(); ++r) {
      if (r == q || h(p, r) == 0.0) continue;
      out.coeffs(row, space.index(r, q)) += h(p, r) * fold;
    }
  }
  for (int i = 0; i < params.sites; ++i) {
    const int d = space.index(SpinOrbital{i, Spin::up}.flat(),
                              SpinOrbital{i, Spin::down}.flat());
    out.coeffs(d, d) += params.interaction;
  }
  return out;
}

bool CriticalSubset::contains(PairPosition pos) const {
  return std::binary_search(members.begin(), members.end(), pos);
}

CriticalSubset symmetry_closure(const std::vector<PairPosition>& seeds,
                                const PairSpace& space, BasisTag basis) {
  std::set<PairPosition> closed;
  for (const auto& s : seeds) {
    if (basis == BasisTag::site) {
      const int rows[2] = {s.row, space.swapped(s.row)};
      const int cols[2] = {s.col, space.swapped(s.col)};
      for (int r : rows) {
        for (int c : cols) {
          closed.insert({r, c});
          closed.insert({c, r});
        }
      }
    } else {
      closed.insert(s);
      closed.insert({s.col, s.row});
    }
  }
  return {basis, space.size(), {closed.begin(), closed.end()}};
}

CriticalSubset critical_subset(const TwoBodyReducedHamiltonian& h2, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  std::vector<PairPosition> seeds;
  for (int r = 0; r < h2.coeffs.rows(); ++r) {
    for (int c = 0; c < h2.coeffs.cols(); ++c) {
      if (std::abs(h2.coeffs(r, c)) > tol) seeds.push_back({r, c});
    }
  }
  return symmetry_closure(seeds, h2.space, h2.basis);
}

GroundStateResult ground_state(const Eigen::MatrixXcd& hamiltonian,
                               double degeneracy_tol) {
  if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() == 0) {
    throw std::invalid_argument("Hamiltonian must be square and non-empty");
  }
  const double asym = (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) {
    throw std::invalid_argument("Hamiltonian is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed");
  }
  GroundStateResult out;
  out.energy = es.eigenvalues()(0);
  out.state = es.eigenvectors().col(0);
  if (hamiltonian.rows() > 1) {
    out.first_excited_energy = es.eigenvalues()(1);
    out.first_excited = es.eigenvectors().col(1);
    out.gap = out.first_excited_energy - out.energy;
  } else {
    out.first_excited_energy = out.energy;
    out.gap = std::numeric_limits<double>::infinity();
  }
  out.degenerate = out.gap <= degeneracy_tol;
  return out;
}

PairEigenbasis pair_eigenbasis(const TwoBodyReducedHamiltonian& h2) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h2.coeffs);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("pair-space eigensolver failed");
  }
  PairEigenbasis out{es.eigenvectors(), es.eigenvalues()};
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
    auto v = out.vectors.col(k);
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
      if (std::abs(v(i)) > std::abs(v(best)) * (1.0 + 1e-12)) best = i;
    }
    const std::complex<double> phase = std::conj(v(best)) / std::abs(v(best));
    v *= phase;
    v(best) = std::abs(v(best));
  }
  return out;
}

TwoBodyReducedHamiltonian to_eigenbasis(const TwoBodyReducedHamiltonian& h2,
                                        const PairEigenbasis& eig) {
  TwoBodyReducedHamiltonian out = h2;
  out.basis = BasisTag::pair_eigenbasis;
  out.coeffs = eig.vectors.adjoint() * h2.coeffs * eig.vectors;
  return out;
}

}  // namespace rdmc
