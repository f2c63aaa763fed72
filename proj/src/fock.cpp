// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmc/fock.hpp"

#include <algorithm>
#include <stdexcept>

namespace rdmc {

Determinant Determinant::from_orbitals(std::span<const int> occupied) {
  std::uint32_t bits = 0;
  for (int p : occupied) {
    if (p < 0 || p >= 2 * kMaxSites) {
      throw std::out_of_range("spin-orbital index out of range");
    }
    bits |= std::uint32_t{1} << p;
  }
  return Determinant(bits);
}

int Determinant::count_spin(Spin s, int sites) const {
  int n = 0;
  for (int i = 0; i < sites; ++i) {
    n += occupied(SpinOrbital{i, s}.flat()) ? 1 : 0;
  }
  return n;
}

std::vector<int> Determinant::orbitals() const {
  std::vector<int> out;
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(std::countr_zero(b));
  }
  return out;
}

std::string Determinant::to_string(int n_orbitals) const {
  std::string s(static_cast<std::size_t>(n_orbitals), '0');
  for (int p = 0; p < n_orbitals; ++p) {
    if (occupied(p)) s[static_cast<std::size_t>(p)] = '1';
  }
  return s;
}

namespace {

void check_orbital(int p) {
  if (p < 0 || p >= 2 * kMaxSites) throw std::out_of_range("spin-orbital index out of range");
}

}  // namespace

std::optional<SignedDeterminant> apply_annihilation(Determinant det, int p) {
  check_orbital(p);
  if (!det.occupied(p)) return std::nullopt;
  const int sign = (det.occupied_below(p) % 2 == 0) ? 1 : -1;
  return SignedDeterminant{Determinant(det.bits() & ~(std::uint32_t{1} << p)),
                           sign};
}

std::optional<SignedDeterminant> apply_creation(Determinant det, int p) {
  check_orbital(p);
  if (det.occupied(p)) return std::nullopt;
  const int sign = (det.occupied_below(p) % 2 == 0) ? 1 : -1;
  return SignedDeterminant{Determinant(det.bits() | (std::uint32_t{1} << p)),
                           sign};
}

std::optional<SignedDeterminant> apply_excitation_string(
    Determinant det, std::span<const LadderOp> ops) {
  SignedDeterminant cur{det, 1};
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    auto next = (it->kind == LadderKind::create)
                    ? apply_creation(cur.det, it->orbital)
                    : apply_annihilation(cur.det, it->orbital);
    if (!next) return std::nullopt;
    cur.det = next->det;
    cur.sign *= next->sign;
  }
  return cur;
}

SectorBasis::SectorBasis(int sites, std::vector<Determinant> dets, int n_up,
                         int n_dn)
    : sites_(sites), n_up_(n_up), n_dn_(n_dn), dets_(std::move(dets)) {
  std::sort(dets_.begin(), dets_.end());
  dets_.erase(std::unique(dets_.begin(), dets_.end()), dets_.end());
  index_.reserve(dets_.size());
  for (std::size_t i = 0; i < dets_.size(); ++i) {
    index_.emplace(dets_[i].bits(), i);
  }
}

std::optional<std::size_t> SectorBasis::index_of(Determinant det) const {
  auto it = index_.find(det.bits());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

void check_sites(int sites) {
  if (sites < 1 || sites > kMaxSites) {
    throw std::invalid_argument("site count must lie in [1, " +
                                std::to_string(kMaxSites) + "]");
  }
}

// All subsets of `sites` positions with exactly `count` members, as site
// bitmasks.
std::vector<std::uint32_t> site_combinations(int sites, int count) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << sites); ++m) {
    if (std::popcount(m) == count) out.push_back(m);
  }
  return out;
}

std::uint32_t spread(std::uint32_t site_mask, Spin s) {
  std::uint32_t bits = 0;
  for (std::uint32_t m = site_mask; m != 0; m &= m - 1) {
    bits |= std::uint32_t{1} << SpinOrbital{std::countr_zero(m), s}.flat();
  }
  return bits;
}

}  // namespace

SectorBasis enumerate_sector(int sites, int n_up, int n_dn) {
  check_sites(sites);
  if (n_up < 0 || n_up > sites || n_dn < 0 || n_dn > sites) {
    throw std::invalid_argument("particle numbers must lie in [0, sites]");
  }
  const auto ups = site_combinations(sites, n_up);
  const auto dns = site_combinations(sites, n_dn);
  std::vector<Determinant> dets;
  dets.reserve(ups.size() * dns.size());
  for (auto u : ups) {
    for (auto d : dns) {
      dets.emplace_back(spread(u, Spin::up) | spread(d, Spin::down));
    }
  }
  return SectorBasis(sites, std::move(dets), n_up, n_dn);
}

SectorBasis enumerate_fock_space(int sites) {
  check_sites(sites);
  if (sites > 8) throw std::invalid_argument("full Fock space limited to 8 sites");
  std::vector<Determinant> dets;
  const std::uint32_t n = std::uint32_t{1} << (2 * sites);
  dets.reserve(n);
  for (std::uint32_t b = 0; b < n; ++b) dets.emplace_back(b);
  return SectorBasis(sites, std::move(dets));
}

Eigen::MatrixXcd operator_matrix(const SectorBasis& basis,
                                 std::span<const OperatorTerm> terms) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (const auto& term : terms) {
      auto res = apply_excitation_string(basis[static_cast<std::size_t>(j)],
                                         term.ops);
      if (!res) continue;
      auto i = basis.index_of(res->det);
      if (!i) continue;
      m(static_cast<Eigen::Index>(*i), j) +=
          term.coeff * static_cast<double>(res->sign);
    }
  }
  return m;
}

}  // namespace rdmc
