// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RDMC_PAIR_SPACE_HPP_
#define RDMC_PAIR_SPACE_HPP_

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace rdmc {

// Representation a pair-space matrix is expressed in.
enum class BasisTag { site, pair_eigenbasis };

std::string_view to_string(BasisTag tag);
BasisTag basis_tag_from_string(std::string_view s);

// Ordered pairs (p, q) of distinct spin-orbitals, linearized row-major:
// (0,1), (0,2), ..., (0,n-1), (1,0), (1,2), ...
class PairSpace {
 public:
  explicit PairSpace(int n_orbitals) : n_(n_orbitals) {
    if (n_orbitals < 2) throw std::invalid_argument("pair space needs >= 2 orbitals");
  }

  int n_orbitals() const { return n_; }
  int size() const { return n_ * (n_ - 1); }

  int index(int p, int q) const {
    if (p == q || p < 0 || q < 0 || p >= n_ || q >= n_) {
      throw std::out_of_range("invalid orbital pair");
    }
    return p * (n_ - 1) + (q < p ? q : q - 1);
  }
  std::pair<int, int> pair(int index) const {
    const int p = index / (n_ - 1);
    const int r = index % (n_ - 1);
    return {p, r < p ? r : r + 1};
  }
  // Index of (q, p) given the index of (p, q).
  int swapped(int index) const {
    auto [p, q] = pair(index);
    return this->index(q, p);
  }

  friend bool operator==(const PairSpace&, const PairSpace&) = default;

 private:
  int n_;
};

// A single matrix position (row pair; column pair) in pair space.
struct PairPosition {
  int row = 0;
  int col = 0;
  friend constexpr auto operator<=>(const PairPosition&,
                                    const PairPosition&) = default;
};

}  // namespace rdmc

#endif  // RDMC_PAIR_SPACE_HPP_
