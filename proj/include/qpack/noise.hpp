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

// Calibration-driven noise and a Monte-Carlo Kraus trajectory simulator.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qpack/circuit.hpp"
#include "qpack/qaoa.hpp"
#include "qpack/statevector.hpp"

namespace qpack {

/// Times in microseconds may be +infinity (no decay).
struct QubitCalibration {
  double t1_us = 0.0;
  double t2_us = 0.0;
  double f1q = 1.0;
  double f_readout = 1.0;
};

struct CalibrationData {
  /// Keyed by physical qubit; ids must be 0..n-1.
  std::map<std::size_t, QubitCalibration> qubits;
  std::map<Edge, double> cz_fidelity;  // keys ordered (i < j)
  double gate_1q_ns = 0.0;
  double cz_ns = 0.0;
  /// Free-form provenance label carried through the file.
  std::string label;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

struct QubitNoise {
  double relax_rate = 0.0;   // 1/T1 in 1/ns
  double dephase_rate = 0.0; // 1/T_phi in 1/ns
  double p1 = 0.0;           // depolarizing after each single-qubit gate
  double p_ro = 0.0;         // readout flip
};

struct NoiseModel {
  std::vector<QubitNoise> qubits;  // by physical qubit
  std::map<Edge, double> p2;       // two-qubit depolarizing per coupler
  double gate_1q_ns = 0.0;
  double cz_ns = 0.0;
  /// Qubits not touched by a layer decay for the layer's duration.
  bool idle_noise = true;

  /// 1 - exp(-t / T1) for qubit q over t nanoseconds.
  double gamma(std::size_t q, double t_ns) const;
  /// 1 - exp(-t / T_phi).
  double lambda_phi(std::size_t q, double t_ns) const;
  double cz_depolarizing(std::size_t a, std::size_t b) const;

  /// Multiplies every decay rate and every probability by s (probabilities
  /// clamped to 1, readout flips to 1/2).
  NoiseModel scaled(double s) const;
  /// Throws ValidationError unless every channel parameter lies in [0, 1].
  void validate() const;

  /// All rates zero; every qubit pair gets a zero-noise coupler entry.
  static NoiseModel noiseless(std::size_t num_qubits);
};

/// gamma = 1 - exp(-t/T1), lambda_phi = 1 - exp(-t/T_phi) with
/// 1/T_phi = 1/T2 - 1/(2 T1); p1 = 1 - f1q; p2 = 1 - f_cz; p_ro = 1 - f_ro.
NoiseModel noise_from_calibration(const CalibrationData& cal);

/// Kraus operators of the single-qubit channels, for completeness checks and
/// density-matrix oracles.
std::vector<Mat2> amplitude_damping_kraus(double gamma);
std::vector<Mat2> phase_damping_kraus(double lambda);
/// max |sum K^dagger K - I|.
double kraus_completeness_error(const std::vector<Mat2>& kraus);

/// Stochastic channel applications on a statevector (renormalized).
void apply_amplitude_damping(StateVector& psi, std::size_t q, double gamma,
                             std::mt19937_64& rng);
void apply_phase_damping(StateVector& psi, std::size_t q, double lambda,
                         std::mt19937_64& rng);
/// With probability p, one of X, Y, Z chosen uniformly.
void apply_depolarizing(StateVector& psi, std::size_t q, double p, std::mt19937_64& rng);
/// With probability p, one of the 15 non-identity two-qubit Paulis.
void apply_depolarizing2(StateVector& psi, std::size_t a, std::size_t b, double p,
                         std::mt19937_64& rng);
/// Applies Pauli k (0 = I, 1 = X, 2 = Y, 3 = Z) to qubit q.
void apply_pauli(StateVector& psi, std::size_t q, int k);

struct NoisyRunOptions {
  std::uint64_t trajectories = 1000;
  std::uint64_t shots_per_trajectory = 1;
  std::uint64_t seed = 0;
  std::size_t max_qubits = kDefaultQubitCap;
};

struct NoisyRunResult {
  Histogram histogram;  // over measured qubits, logical order
  /// Mean over trajectories of each trajectory's success fraction.
  double success_probability = 0.0;
  /// Standard error of that mean across trajectories.
  double std_error = 0.0;
  std::uint64_t trajectories = 0;
  std::uint64_t shots = 0;
};

/// Trajectory simulation: after every PRX, amplitude damping, phase damping
/// and depolarizing on its qubit; after every CZ, damping on both qubits for
/// the CZ duration and two-qubit depolarizing; readout flips per bit.
/// Trajectory t draws from stream (seed, t), so results do not depend on the
/// thread count. optimal holds basis indices of the measured register.
NoisyRunResult run_noisy(const CompiledCircuit& circuit, const NoiseModel& model,
                         const NoisyRunOptions& options,
                         const std::vector<std::uint64_t>& optimal = {});

struct NoisySweepRow {
  std::size_t p = 0;
  double success_probability = 0.0;
  double std_error = 0.0;
  /// Noiseless success probability of the same circuit.
  double ideal_success_probability = 0.0;
  std::size_t cz_count = 0;
  std::size_t depth = 0;
};

/// Compiles each pre-trained parameter set and runs it through the model.
/// Depth p uses seed stream (seed, p).
std::vector<NoisySweepRow> noisy_depth_sweep(const IsingOperator& op,
                                             const XMixer& mixer,
                                             const std::vector<QaoaParams>& params,
                                             const NoiseModel& model,
                                             const CouplingMap& map,
                                             const Placement& placement,
                                             const NoisyRunOptions& options,
                                             const std::vector<std::uint64_t>& optimal);

}  // namespace qpack
