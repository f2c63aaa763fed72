// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmc/annealer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

namespace rdmc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool same_up_to_sign(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff() < 1e-12 ||
         (a + b).cwiseAbs().maxCoeff() < 1e-12;
}

void require_anti_hermitian(const Eigen::MatrixXcd& g) {
  if (g.rows() != g.cols() || (g + g.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("generator is not anti-Hermitian");
  }
}

}  // namespace

OperatorPool build_pool(const SectorBasis& basis) {
  const int n = basis.n_orbitals();
  OperatorPool pool;
  auto offer = [&](std::vector<OperatorTerm> terms, std::string label) {
    Eigen::MatrixXcd g = operator_matrix(basis, terms);
    if (g.size() == 0 || g.cwiseAbs().maxCoeff() < 1e-12) return;
    require_anti_hermitian(g);
    for (const auto& existing : pool.generators) {
      if (same_up_to_sign(existing, g)) return;
    }
    pool.generators.push_back(std::move(g));
    pool.labels.push_back(std::move(label));
  };

  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      if (spin_of(p) != spin_of(q)) continue;
      offer({{1.0, {cre(p), ann(q)}}, {-1.0, {cre(q), ann(p)}}},
            "single " + std::to_string(p) + "<-" + std::to_string(q));
    }
  }
  auto spin_up_count = [](int p, int q) {
    return (spin_of(p) == Spin::up) + (spin_of(q) == Spin::up);
  };
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) pairs.emplace_back(p, q);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const auto [p, q] = pairs[i];
      const auto [r, s] = pairs[j];
      if (spin_up_count(p, q) != spin_up_count(r, s)) continue;
      offer({{1.0, {cre(p), cre(q), ann(s), ann(r)}},
             {-1.0, {cre(r), cre(s), ann(q), ann(p)}}},
            "double " + std::to_string(p) + "," + std::to_string(q) + "<-" +
                std::to_string(r) + "," + std::to_string(s));
    }
  }
  return pool;
}

PreparedRotation::PreparedRotation(const Eigen::MatrixXcd& generator) {
  require_anti_hermitian(generator);
  const std::complex<double> i(0.0, 1.0);
  Eigen::MatrixXcd herm = i * generator;
  herm = 0.5 * (herm + herm.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  vectors_ = es.eigenvectors();
  values_ = es.eigenvalues();
}

Eigen::VectorXcd PreparedRotation::apply(const Eigen::VectorXcd& psi,
                                         double theta) const {
  // exp(theta G) = W exp(-i theta w) W†
  Eigen::VectorXcd c = vectors_.adjoint() * psi;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    c(k) *= std::polar(1.0, -theta * values_(k));
  }
  return vectors_ * c;
}

Eigen::VectorXcd apply_rotation(const Eigen::VectorXcd& psi,
                                const Eigen::MatrixXcd& generator, double theta) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("state is not normalized");
  }
  if (psi.size() != generator.rows()) {
    throw std::invalid_argument("state and generator dimensions differ");
  }
  return PreparedRotation(generator).apply(psi, theta);
}

void AnnealConfig::validate() const {
  if (!(initial_temperature >= 0.0)) {
    throw std::invalid_argument("initial temperature must be >= 0");
  }
  if (!(temperature_decay > 0.0 && temperature_decay <= 1.0)) {
    throw std::invalid_argument("temperature decay must lie in (0, 1]");
  }
  if (!(initial_max_angle > 0.0)) {
    throw std::invalid_argument("initial maximum angle must be positive");
  }
  if (!(angle_growth >= 1.0) || !(angle_shrink > 0.0 && angle_shrink <= 1.0)) {
    throw std::invalid_argument("angle updates need growth >= 1 >= shrink > 0");
  }
  if (max_iterations < 0) throw std::invalid_argument("iteration budget must be >= 0");
  if (record_stride < 1) throw std::invalid_argument("record stride must be >= 1");
}

namespace {

double squared_distance(std::span<const std::complex<double>> values,
                        std::span<const std::complex<double>> target) {
  double sum = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) sum += std::norm(values[k] - target[k]);
  return sum;
}

class Diagnostics {
 public:
  explicit Diagnostics(const AnnealReference* ref) : ref_(ref) {
    if (ref_ && ref_->full_probe) buffer_.resize(ref_->full_probe->size());
  }

  void fill(const Eigen::VectorXcd& psi, TraceRow& row) {
    row.d_full = row.energy_dev = row.infidelity = kNaN;
    if (!ref_) return;
    if (ref_->full_probe) {
      ref_->full_probe->evaluate(psi, buffer_);
      row.d_full = std::sqrt(squared_distance(buffer_, ref_->full_values));
    }
    if (ref_->hamiltonian.size() != 0) {
      const double e = psi.dot(ref_->hamiltonian * psi).real();
      row.energy_dev = std::abs(e - ref_->ground_energy);
    }
    if (ref_->ground_state.size() != 0) {
      row.infidelity = std::clamp(1.0 - std::norm(ref_->ground_state.dot(psi)), 0.0, 1.0);
    }
  }

 private:
  const AnnealReference* ref_;
  std::vector<std::complex<double>> buffer_;
};

}  // namespace

double target_distance(const CompletionTarget& target, const Eigen::VectorXcd& psi) {
  const auto values = target.probe.evaluate(psi);
  return std::sqrt(squared_distance(values, target.values));
}

AnnealTrace anneal(const CompletionTarget& target, const Eigen::VectorXcd& initial,
                   std::span<const PreparedRotation> rotations,
                   const AnnealConfig& config, const AnnealReference* reference) {
  config.validate();
  if (rotations.empty()) throw std::invalid_argument("operator pool is empty");
  if (target.probe.size() == 0 || target.values.size() != target.probe.size()) {
    throw std::invalid_argument("target subset is empty or inconsistent");
  }
  if (static_cast<std::size_t>(initial.size()) != target.probe.dimension()) {
    throw std::invalid_argument("initial state does not match the sector");
  }
  if (std::abs(initial.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("initial state is not normalized");
  }

  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<std::size_t> pick(0, rotations.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::complex<double>> values(target.probe.size());
  auto cost = [&](const Eigen::VectorXcd& psi) {
    target.probe.evaluate(psi, values);
    return std::sqrt(squared_distance(values, target.values));
  };

  Diagnostics diagnostics(reference);
  AnnealTrace trace;
  Eigen::VectorXcd psi = initial;
  double d = cost(psi);
  double temperature = config.initial_temperature;
  double max_angle = std::clamp(config.initial_max_angle, kMinMaxAngle, kMaxMaxAngle);
  trace.d_min = d;
  trace.best_state = psi;

  auto record = [&](std::int64_t k, bool accepted, int generator, bool clamped) {
    TraceRow row;
    row.k = k;
    row.d_partial = d;
    row.temperature = temperature;
    row.max_angle = max_angle;
    row.accepted = accepted;
    row.generator = generator;
    row.clamped = clamped;
    diagnostics.fill(psi, row);
    trace.rows.push_back(row);
  };
  record(0, true, -1, false);

  for (std::int64_t k = 0; k < config.max_iterations; ++k) {
    const std::size_t g = pick(rng);
    const double theta = std::uniform_real_distribution<double>(-max_angle, max_angle)(rng);
    Eigen::VectorXcd candidate = rotations[g].apply(psi, theta);
    candidate.normalize();
    const double d_candidate = cost(candidate);
    const double delta = d_candidate - d;

    bool accept = delta <= 0.0;
    if (!accept && temperature > 0.0) {
      accept = unit(rng) < std::exp(-delta / temperature);
    }
    double next_angle = max_angle;
    if (accept) {
      psi = std::move(candidate);
      d = d_candidate;
      next_angle *= config.angle_growth;
      ++trace.accepted_moves;
    } else {
      next_angle *= config.angle_shrink;
    }
    const double clamped_angle = std::clamp(next_angle, kMinMaxAngle, kMaxMaxAngle);
    const bool clamped = clamped_angle != next_angle;
    if (clamped) ++trace.clamp_events;
    max_angle = clamped_angle;
    temperature *= config.temperature_decay;

    if (d < trace.d_min) {
      trace.d_min = d;
      trace.argmin_iteration = k + 1;
      trace.best_state = psi;
    }
    const std::int64_t step = k + 1;
    if (step % config.record_stride == 0 || step == config.max_iterations) {
      record(step, accept, static_cast<int>(g), clamped);
    }
  }
  trace.final_state = psi;
  trace.final_distance = d;
  return trace;
}

AnnealTrace anneal(const CompletionTarget& target, const Eigen::VectorXcd& initial,
                   const OperatorPool& pool, const AnnealConfig& config,
                   const AnnealReference* reference) {
  std::vector<PreparedRotation> rotations;
  rotations.reserve(pool.size());
  for (const auto& g : pool.generators) rotations.emplace_back(g);
  return anneal(target, initial, rotations, config, reference);
}

std::vector<AnnealTrace> multi_start(std::span<const AnnealJob> jobs,
                                     const OperatorPool& pool, int parallelism) {
  std::vector<AnnealTrace> results(jobs.size());
  if (jobs.empty()) return results;
  std::vector<PreparedRotation> rotations;
  rotations.reserve(pool.size());
  for (const auto& g : pool.generators) rotations.emplace_back(g);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const AnnealJob& job = jobs[i];
      if (!job.target) throw std::invalid_argument("job without target");
      results[i] = anneal(*job.target, job.initial, rotations, job.config, job.reference);
    }
  };
  const int threads = std::clamp(parallelism, 1, static_cast<int>(jobs.size()));
  if (threads == 1) {
    worker();
    return results;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  {
    std::vector<std::jthread> pool_threads;
    for (int t = 0; t < threads; ++t) {
      pool_threads.emplace_back([&, t] {
        try {
          worker();
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace rdmc
