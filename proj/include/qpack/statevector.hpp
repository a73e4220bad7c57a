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

// Dense statevector kernels shared by the ideal engine, the compiled-circuit
// simulator and the trajectory noise simulator. Qubit q is bit q of the basis
// index.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qpack {

using Amplitude = std::complex<double>;
using StateVector = std::vector<Amplitude>;
/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<Amplitude, 4>;

inline constexpr std::size_t kDefaultQubitCap = 26;

/// Throws QubitCapExceeded when n > cap.
void check_qubit_cap(std::size_t n, std::size_t cap = kDefaultQubitCap);

StateVector zero_state(std::size_t num_qubits);
StateVector plus_state(std::size_t num_qubits);

std::size_t num_qubits_of(const StateVector& psi);

void apply_1q(StateVector& psi, std::size_t q, const Mat2& m);
void apply_cz(StateVector& psi, std::size_t a, std::size_t b);
/// psi[x] *= exp(-i * angle * energies[x]).
void apply_diagonal_evolution(StateVector& psi, std::span<const double> energies,
                              double angle);
/// exp(-i * angle * coefficient * sum_q X_q) on every qubit.
void apply_x_mixer(StateVector& psi, double coefficient, double angle);

Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 adjoint(const Mat2& m);
/// exp(-i theta/2 (cos(phi) X + sin(phi) Y)).
Mat2 prx_matrix(double theta, double phi);
Mat2 rx_matrix(double theta);
Mat2 ry_matrix(double theta);
Mat2 rz_matrix(double theta);
Mat2 identity2();

double norm_squared(const StateVector& psi);
void normalize(StateVector& psi);
std::vector<double> probabilities(const StateVector& psi);
/// Probability that qubit q reads 1.
double probability_one(const StateVector& psi, std::size_t q);

/// max_x |a_x - e^{i phi} b_x| after removing the best global phase.
double deviation_up_to_phase(const StateVector& a, const StateVector& b);

/// Cumulative distribution sampler over basis states.
class BasisSampler {
 public:
  explicit BasisSampler(std::span<const double> probabilities);
  std::uint64_t operator()(std::mt19937_64& rng) const;

 private:
  std::vector<double> cdf_;
};

}  // namespace qpack
