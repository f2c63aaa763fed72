// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

// Text formats shared by the library and the command-line tool.
//
// 2-RDM file:
//   rdmc-two-rdm 1
//   basis site|pair-eigenbasis
//   orbitals <2L>
//   particles <N>
//   pair-order ordered-distinct-row-major
//   dim <P>
//   followed by P lines, each holding P "re im" pairs of one matrix row.
// Floating-point values use the shortest round-trip representation, so a
// write/read cycle is bit-exact.
//
// Critical-subset file:
//   rdmc-critical-subset 1
//   basis <tag>
//   dim <P>
//   count <n>
//   followed by n lines "row col".
//
// State file:
//   rdmc-state 1
//   dim <D>
//   followed by D lines "re im".
//
// Trace CSV: a "# rdmc-trace v1" line, the column header
//   k,D_partial,D_full,energy_dev,infidelity,T,theta_max,accepted,generator_id,clamped
// and one row per recorded iteration (17 significant digits). `clamped` is 1
// when that step's angle update hit the [1e-8, pi] bounds; row 0 is the
// initial state (generator_id -1).

#ifndef RDMC_IO_HPP_
#define RDMC_IO_HPP_

#include <Eigen/Dense>

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rdmc/annealer.hpp"
#include "rdmc/hamiltonian.hpp"
#include "rdmc/rdm.hpp"

namespace rdmc {

// Malformed input files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kTwoRdmFormatVersion = 1;
inline constexpr int kSubsetFormatVersion = 1;
inline constexpr int kTraceFormatVersion = 1;

std::string format_double(double x);   // shortest round-trip
std::string format_double17(double x); // %.17g

void write_two_rdm(std::ostream& os, const TwoRDM& gamma);
TwoRDM read_two_rdm(std::istream& is);

void write_subset(std::ostream& os, const CriticalSubset& subset);
CriticalSubset read_subset(std::istream& is);

void write_state(std::ostream& os, const Eigen::VectorXcd& psi);
Eigen::VectorXcd read_state(std::istream& is);

void write_trace_csv(std::ostream& os, const AnnealTrace& trace);

// File-path conveniences; throw std::runtime_error on I/O failure.
void save_two_rdm(const std::filesystem::path& path, const TwoRDM& gamma);
TwoRDM load_two_rdm(const std::filesystem::path& path);
void save_subset(const std::filesystem::path& path, const CriticalSubset& subset);
CriticalSubset load_subset(const std::filesystem::path& path);
void save_state(const std::filesystem::path& path, const Eigen::VectorXcd& psi);
Eigen::VectorXcd load_state(const std::filesystem::path& path);
void save_text(const std::filesystem::path& path, const std::string& text);

}  // namespace rdmc

#endif  // RDMC_IO_HPP_
