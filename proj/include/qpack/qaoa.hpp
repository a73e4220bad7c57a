// Copyright 2026 The qpack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qpack/hamiltonian.hpp"
#include "qpack/packing_graph.hpp"
#include "qpack/statevector.hpp"

namespace qpack {

struct QaoaParams {
  std::vector<double> alphas;  // cost angles
  std::vector<double> betas;   // mixer angles

  std::size_t layers() const { return alphas.size(); }
  /// Throws ValidationError unless both lists have the same length >= 1.
  void validate() const;
};

/// Bitstring -> count.
using Histogram = std::map<std::string, std::uint64_t>;

struct QaoaResult {
  QaoaParams params;
  std::vector<double> energy_trace;
  Histogram histogram;
  /// Fraction of shots landing in the optimal set.
  double success_probability = 0.0;
  /// The same quantity read off the statevector.
  double exact_success_probability = 0.0;
  double expectation = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
};

/// A diagonal cost operator prepared for repeated evolution: the full
/// diagonal, compressed to distinct energy levels when there are few.
class CostDiagonal {
 public:
  explicit CostDiagonal(const IsingOperator& op,
                        std::size_t max_qubits = kDefaultQubitCap);

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<double>& energies() const { return energies_; }
  /// psi[x] *= exp(-i angle E(x)).
  void apply_phase(StateVector& psi, double angle) const;
  double expectation(const StateVector& psi) const;

 private:
  std::size_t num_qubits_ = 0;
  std::vector<double> energies_;
  std::vector<double> levels_;
  std::vector<std::uint32_t> level_of_;  // empty when levels are not used
};

/// |+>^n, then per layer exp(-i alpha H_C) followed by exp(-i beta H_M).
StateVector evolve(const IsingOperator& op, const XMixer& mixer,
                   const QaoaParams& params,
                   std::size_t max_qubits = kDefaultQubitCap);
StateVector evolve(const CostDiagonal& cost, const XMixer& mixer,
                   const QaoaParams& params);

/// <psi|H|psi>, constant included. Throws InvalidArgument on size mismatch.
double expectation(const IsingOperator& op, const StateVector& psi);

struct TrainConfig {
  std::size_t starts = 8;
  /// Per-start evaluation budget; 0 means 150 * (2p + 1).
  std::size_t max_evaluations = 0;
  double initial_step = 0.15;
  /// Linear ramp: alpha_k = ramp * t_k, beta_k = ramp * (1 - t_k) with
  /// t_k = (k + 1/2) / p.
  double ramp = 0.75;
  /// Standard deviation of the Gaussian perturbation for starts after the
  /// first.
  double perturbation = 0.3;
  /// Optional extra start, typically interpolated from a shallower optimum.
  std::optional<QaoaParams> warm_start;
  std::size_t max_qubits = kDefaultQubitCap;
};

struct TrainResult {
  QaoaParams params;
  double expectation = 0.0;
  /// Best simplex value per optimizer iteration of the winning start.
  std::vector<double> energy_trace;
  std::size_t evaluations = 0;
};

/// Multi-start Nelder-Mead minimization of <H_C> over the 2p angles.
/// Betas are reduced into [0, pi) on return.
TrainResult train(const IsingOperator& op, const XMixer& mixer, std::size_t p,
                  const TrainConfig& config = {}, std::uint64_t seed = 0);
TrainResult train(const CostDiagonal& cost, const XMixer& mixer, std::size_t p,
                  const TrainConfig& config = {}, std::uint64_t seed = 0);

/// Linear ramp initial angles for p layers.
QaoaParams linear_ramp(std::size_t p, double ramp);

/// Warm start for p + 1 layers from a p-layer optimum by linear
/// interpolation of the angle schedules.
QaoaParams interpolate_params(const QaoaParams& params);

/// Multinomial sampling from |amplitude|^2. optimal lists basis indices.
QaoaResult sample(const IsingOperator& op, const XMixer& mixer,
                  const QaoaParams& params, std::uint64_t shots,
                  std::uint64_t seed, const std::vector<std::uint64_t>& optimal,
                  std::size_t max_qubits = kDefaultQubitCap);
QaoaResult sample(const CostDiagonal& cost, const XMixer& mixer,
                  const QaoaParams& params, std::uint64_t shots,
                  std::uint64_t seed, const std::vector<std::uint64_t>& optimal);

/// Draws shots from a probability vector into a histogram keyed by bitstring.
Histogram sample_histogram(std::span<const double> probabilities,
                           std::size_t num_qubits, std::uint64_t shots,
                           std::mt19937_64& rng);

/// Most frequent bitstring; ties go to the lexicographically smallest.
std::string modal_bitstring(const Histogram& h);

/// Shot fraction on the optimal set.
double success_fraction(const Histogram& h, const std::vector<std::uint64_t>& optimal);

/// Runs full-instance sampling at angles trained elsewhere. Throws
/// InvalidArgument when params.layers() != expected_layers.
QaoaResult transfer_params(const QaoaParams& params, std::size_t expected_layers,
                           const IsingOperator& full_op, const XMixer& mixer,
                           std::uint64_t shots, std::uint64_t seed,
                           const std::vector<std::uint64_t>& optimal,
                           std::size_t max_qubits = kDefaultQubitCap);

/// A cost operator together with the basis states that count as success.
struct SweepInstance {
  IsingOperator op;
  std::vector<std::uint64_t> optimal;
};
using InstanceFactory = std::function<SweepInstance(double lambda)>;

struct DepthSweepRow {
  double lambda = 0.0;
  std::size_t p = 0;
  double success_probability = 0.0;
  /// Multinomial standard error sqrt(P (1 - P) / shots).
  double std_error = 0.0;
  double exact_success_probability = 0.0;
  bool optimum_modal = false;
  double expectation = 0.0;
  QaoaParams params;
};

struct DepthSweepOptions {
  std::uint64_t shots = 20000;
  std::uint64_t seed = 0;
  TrainConfig train;
  /// Seed each depth with the interpolated optimum of the previous one.
  bool warm_start = true;
};

/// Trains and samples every (lambda, p) pair. Rows are ordered by lambda,
/// then p. Depth p reuses the seed stream (seed, p).
std::vector<DepthSweepRow> depth_sweep(const InstanceFactory& factory,
                                       const std::vector<std::size_t>& depths,
                                       const std::vector<double>& lambdas,
                                       const DepthSweepOptions& options = {});

/// Optimal basis states of a graph's MIS operator: every maximum independent
/// set, encoded with the MIS qubit layout.
std::vector<std::uint64_t> mis_optimal_states(const PackingGraph& g);

/// Factory building mis_hamiltonian(g, lambda) with all MIS witnesses as the
/// optimal set.
InstanceFactory mis_instance_factory(const PackingGraph& g);

/// Ground states of a diagonal operator (energies within tol of the minimum).
std::vector<std::uint64_t> ground_states(const IsingOperator& op, double tol = 1e-9);

}  // namespace qpack
