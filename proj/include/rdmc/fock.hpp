// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

// Fermionic Fock-space machinery: occupation-bitstring determinants,
// fixed-(N_up, N_dn) sector enumeration and ladder-operator application
// with exact sign tracking.
//
// Spin-orbitals are interleaved: flat index p = 2 * site + spin, with
// up = 0 and down = 1. A determinant with occupied orbitals p1 < p2 < ... < pN
// stands for a†_{p1} a†_{p2} ... a†_{pN} |vac>; every sign in the library is
// relative to that ordering.

#ifndef RDMC_FOCK_HPP_
#define RDMC_FOCK_HPP_

#include <Eigen/Dense>

#include <bit>
#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace rdmc {

inline constexpr int kMaxSites = 16;

enum class Spin : int { up = 0, down = 1 };

struct SpinOrbital {
  int site = 0;
  Spin spin = Spin::up;

  constexpr int flat() const { return 2 * site + static_cast<int>(spin); }
  static constexpr SpinOrbital from_flat(int p) {
    return {p / 2, (p % 2 == 0) ? Spin::up : Spin::down};
  }
  friend constexpr bool operator==(SpinOrbital, SpinOrbital) = default;
};

constexpr Spin spin_of(int p) { return (p % 2 == 0) ? Spin::up : Spin::down; }
constexpr int site_of(int p) { return p / 2; }

class Determinant {
 public:
  constexpr Determinant() = default;
  constexpr explicit Determinant(std::uint32_t bits) : bits_(bits) {}

  static Determinant from_orbitals(std::span<const int> occupied);

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool occupied(int p) const { return (bits_ >> p) & 1u; }
  constexpr int particle_count() const { return std::popcount(bits_); }
  int count_spin(Spin s, int sites) const;
  // Number of occupied orbitals with flat index strictly below p.
  constexpr int occupied_below(int p) const {
    return std::popcount(bits_ & ((std::uint32_t{1} << p) - 1u));
  }
  std::vector<int> orbitals() const;
  std::string to_string(int n_orbitals) const;

  friend constexpr auto operator<=>(Determinant, Determinant) = default;

 private:
  std::uint32_t bits_ = 0;
};

struct SignedDeterminant {
  Determinant det;
  int sign = 1;
  friend constexpr bool operator==(const SignedDeterminant&,
                                   const SignedDeterminant&) = default;
};

enum class LadderKind { create, annihilate };

struct LadderOp {
  LadderKind kind;
  int orbital;
};

constexpr LadderOp cre(int p) { return {LadderKind::create, p}; }
constexpr LadderOp ann(int p) { return {LadderKind::annihilate, p}; }

// Throw std::out_of_range for p outside [0, 2 * kMaxSites).
std::optional<SignedDeterminant> apply_annihilation(Determinant det, int p);
std::optional<SignedDeterminant> apply_creation(Determinant det, int p);

// `ops` is written in operator order (leftmost operator first) and is
// applied right to left, so {cre(0), cre(1)} acting on the vacuum gives
// a†_0 a†_1 |vac> = +|{0,1}>.
std::optional<SignedDeterminant> apply_excitation_string(
    Determinant det, std::span<const LadderOp> ops);

// An ordered list of determinants with a reverse index. Determinants are
// kept in ascending bitmask order so positions are stable across runs.
class SectorBasis {
 public:
  SectorBasis(int sites, std::vector<Determinant> dets, int n_up = -1,
              int n_dn = -1);

  int sites() const { return sites_; }
  int n_orbitals() const { return 2 * sites_; }
  // -1 when the basis mixes particle numbers (full Fock space).
  int n_up() const { return n_up_; }
  int n_dn() const { return n_dn_; }
  int particles() const { return n_up_ < 0 ? -1 : n_up_ + n_dn_; }
  bool is_sector() const { return n_up_ >= 0; }

  std::size_t size() const { return dets_.size(); }
  const Determinant& operator[](std::size_t i) const { return dets_[i]; }
  const std::vector<Determinant>& determinants() const { return dets_; }
  std::optional<std::size_t> index_of(Determinant det) const;

 private:
  int sites_;
  int n_up_;
  int n_dn_;
  std::vector<Determinant> dets_;
  std::unordered_map<std::uint32_t, std::size_t> index_;
};

// Throws std::invalid_argument for sites outside [1, kMaxSites] or particle
// numbers outside [0, sites].
SectorBasis enumerate_sector(int sites, int n_up, int n_dn);

// All 4^sites determinants, ascending. Used for symmetry checks.
SectorBasis enumerate_fock_space(int sites);

// Matrix of a sum of operator strings between basis states,
// M(i, j) = sum_k coeff_k <det_i| ops_k |det_j>. Strings that leave the
// basis are dropped.
struct OperatorTerm {
  std::complex<double> coeff;
  std::vector<LadderOp> ops;
};

Eigen::MatrixXcd operator_matrix(const SectorBasis& basis,
                                 std::span<const OperatorTerm> terms);

}  // namespace rdmc

#endif  // RDMC_FOCK_HPP_
