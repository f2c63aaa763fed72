// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

// Stochastic annealing over the unitary orbit of an N-particle state. Each
// step rotates the current state by exp(theta * G) for a generator G drawn
// uniformly from a pool of anti-Hermitian, number- and S_z-conserving
// operators, and accepts with the Metropolis rule on the Hilbert-Schmidt
// distance between the state's 2-RDM and the target, restricted to the
// critical subset. The maximum angle grows on acceptance and shrinks on
// rejection; the temperature decays geometrically.

#ifndef RDMC_ANNEALER_HPP_
#define RDMC_ANNEALER_HPP_

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rdmc/fock.hpp"
#include "rdmc/rdm.hpp"

namespace rdmc {

struct OperatorPool {
  std::vector<Eigen::MatrixXcd> generators;
  std::vector<std::string> labels;

  std::size_t size() const { return generators.size(); }
  bool empty() const { return generators.empty(); }
};

// Spin-diagonal singles a†_p a_q - a†_q a_p (p < q) and S_z-conserving
// doubles a†_p a†_q a_s a_r - h.c. ((p,q) < (r,s), p < q, r < s), as sector
// matrices. Generators that vanish in the sector or repeat an earlier one
// up to sign are dropped.
OperatorPool build_pool(const SectorBasis& basis);

// exp(theta * G) psi via the eigendecomposition of the Hermitian matrix iG.
// Throws std::invalid_argument if G is not anti-Hermitian (1e-12) or psi
// is not normalized (1e-10).
Eigen::VectorXcd apply_rotation(const Eigen::VectorXcd& psi,
                                const Eigen::MatrixXcd& generator, double theta);

// A generator with its spectral decomposition cached, iG = W diag(w) W†.
class PreparedRotation {
 public:
  explicit PreparedRotation(const Eigen::MatrixXcd& generator);
  Eigen::VectorXcd apply(const Eigen::VectorXcd& psi, double theta) const;

 private:
  Eigen::MatrixXcd vectors_;
  Eigen::VectorXd values_;
};

inline constexpr double kMinMaxAngle = 1e-8;
inline constexpr double kMaxMaxAngle = 3.14159265358979323846;

struct AnnealConfig {
  double initial_temperature = 1e-2;
  double temperature_decay = 0.999;
  double initial_max_angle = 0.5;
  double angle_growth = 1.01;  // applied on acceptance
  double angle_shrink = 0.99;  // applied on rejection
  std::int64_t max_iterations = 200000;
  std::uint64_t seed = 1;
  std::int64_t record_stride = 1;

  // T0 = 0 is allowed and makes the run strictly greedy.
  void validate() const;
};

// Known elements of the target 2-RDM: values at the probe's positions.
struct CompletionTarget {
  RdmProbe probe;
  std::vector<std::complex<double>> values;
};

// Optional diagnostics recorded alongside the cost: the full (noiseless)
// target, the exact ground state and the sector Hamiltonian.
struct AnnealReference {
  const RdmProbe* full_probe = nullptr;
  std::vector<std::complex<double>> full_values;
  Eigen::VectorXcd ground_state;
  double ground_energy = 0.0;
  Eigen::MatrixXcd hamiltonian;
};

struct TraceRow {
  std::int64_t k = 0;
  double d_partial = 0.0;
  double d_full = 0.0;      // NaN without a reference
  double energy_dev = 0.0;  // |E(psi_k) - E0|, NaN without a reference
  double infidelity = 0.0;  // NaN without a reference
  double temperature = 0.0;
  double max_angle = 0.0;
  bool accepted = false;
  int generator = -1;
  bool clamped = false;
};

// `d_min` and `best_state` track every iteration, recorded or not.
struct AnnealTrace {
  std::vector<TraceRow> rows;
  double d_min = 0.0;
  std::int64_t argmin_iteration = 0;
  Eigen::VectorXcd best_state;
  Eigen::VectorXcd final_state;
  double final_distance = 0.0;
  std::int64_t accepted_moves = 0;
  std::int64_t clamp_events = 0;
};

// Partial Hilbert-Schmidt distance of psi to the target.
double target_distance(const CompletionTarget& target, const Eigen::VectorXcd& psi);

// Throws std::invalid_argument on an empty pool or target, an unnormalized
// initial state, or an invalid config. Exhausting the iteration budget is
// not an error.
AnnealTrace anneal(const CompletionTarget& target, const Eigen::VectorXcd& initial,
                   const OperatorPool& pool, const AnnealConfig& config,
                   const AnnealReference* reference = nullptr);

// Same, with the pool's rotations already prepared.
AnnealTrace anneal(const CompletionTarget& target, const Eigen::VectorXcd& initial,
                   std::span<const PreparedRotation> rotations,
                   const AnnealConfig& config,
                   const AnnealReference* reference = nullptr);

struct AnnealJob {
  const CompletionTarget* target = nullptr;
  Eigen::VectorXcd initial;
  AnnealConfig config;
  const AnnealReference* reference = nullptr;
};

// Independent chains on up to `parallelism` threads. Results are in job
// order and identical to running the jobs one after another.
std::vector<AnnealTrace> multi_start(std::span<const AnnealJob> jobs,
                                     const OperatorPool& pool, int parallelism = 1);

}  // namespace rdmc

#endif  // RDMC_ANNEALER_HPP_
