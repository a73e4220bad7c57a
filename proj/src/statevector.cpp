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

#include "qpack/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qpack/error.hpp"
#include "qpack/parallel.hpp"

namespace qpack {

using namespace std::complex_literals;

void check_qubit_cap(std::size_t n, std::size_t cap) {
  if (n > cap) throw QubitCapExceeded(n, cap);
}

StateVector zero_state(std::size_t num_qubits) {
  StateVector psi(std::size_t{1} << num_qubits, 0.0);
  psi[0] = 1.0;
  return psi;
}

StateVector plus_state(std::size_t num_qubits) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  return StateVector(dim, Amplitude(1.0 / std::sqrt(static_cast<double>(dim))));
}

std::size_t num_qubits_of(const StateVector& psi) {
  return static_cast<std::size_t>(std::countr_zero(psi.size()));
}

void apply_1q(StateVector& psi, std::size_t q, const Mat2& m) {
  const std::size_t stride = std::size_t{1} << q;
  const std::size_t dim = psi.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Amplitude a0 = psi[i];
      const Amplitude a1 = psi[i + stride];
      psi[i] = m[0] * a0 + m[1] * a1;
      psi[i + stride] = m[2] * a0 + m[3] * a1;
    }
  }
}

void apply_cz(StateVector& psi, std::size_t a, std::size_t b) {
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t x = 0; x < psi.size(); ++x)
    if ((x & mask) == mask) psi[x] = -psi[x];
}

void apply_diagonal_evolution(StateVector& psi, std::span<const double> energies,
                              double angle) {
  for (std::size_t x = 0; x < psi.size(); ++x) {
    const double t = -angle * energies[x];
    psi[x] *= Amplitude(std::cos(t), std::sin(t));
  }
}

void apply_x_mixer(StateVector& psi, double coefficient, double angle) {
  // exp(-i t X) = cos t I - i sin t X with t = angle * coefficient.
  const double t = angle * coefficient;
  const double c = std::cos(t);
  const Amplitude s(0.0, -std::sin(t));
  const std::size_t n = num_qubits_of(psi);
  const std::size_t dim = psi.size();
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) {
        const Amplitude a0 = psi[i];
        const Amplitude a1 = psi[i + stride];
        psi[i] = c * a0 + s * a1;
        psi[i + stride] = s * a0 + c * a1;
      }
    }
  }
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 adjoint(const Mat2& m) {
  return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

Mat2 prx_matrix(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {Amplitude(c), -1i * std::exp(-1i * phi) * s,
          -1i * std::exp(1i * phi) * s, Amplitude(c)};
}

Mat2 rx_matrix(double theta) { return prx_matrix(theta, 0.0); }

Mat2 ry_matrix(double theta) { return prx_matrix(theta, std::numbers::pi / 2.0); }

Mat2 rz_matrix(double theta) {
  return {std::exp(-0.5i * theta), 0.0, 0.0, std::exp(0.5i * theta)};
}

Mat2 identity2() { return {1.0, 0.0, 0.0, 1.0}; }

double norm_squared(const StateVector& psi) {
  double s = 0.0;
  for (const auto& a : psi) s += std::norm(a);
  return s;
}

void normalize(StateVector& psi) {
  const double n = std::sqrt(norm_squared(psi));
  if (n == 0.0) throw Error("cannot normalize a zero state");
  for (auto& a : psi) a /= n;
}

std::vector<double> probabilities(const StateVector& psi) {
  std::vector<double> p(psi.size());
  std::transform(psi.begin(), psi.end(), p.begin(),
                 [](const Amplitude& a) { return std::norm(a); });
  return p;
}

double probability_one(const StateVector& psi, std::size_t q) {
  const std::size_t bit = std::size_t{1} << q;
  double p = 0.0;
  for (std::size_t x = 0; x < psi.size(); ++x)
    if (x & bit) p += std::norm(psi[x]);
  return p;
}

double deviation_up_to_phase(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size())
    throw InvalidArgument("deviation_up_to_phase: dimension mismatch");
  Amplitude overlap = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) overlap += std::conj(b[x]) * a[x];
  const Amplitude phase =
      std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Amplitude(1.0);
  double dev = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x)
    dev = std::max(dev, std::abs(a[x] - phase * b[x]));
  return dev;
}

BasisSampler::BasisSampler(std::span<const double> probabilities)
    : cdf_(probabilities.size()) {
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    cdf_[i] = acc;
  }
  if (!(acc > 0.0)) throw InvalidArgument("sampler needs positive total weight");
  for (auto& c : cdf_) c /= acc;
  cdf_.back() = 1.0;
}

std::uint64_t BasisSampler::operator()(std::mt19937_64& rng) const {
  const double u = uniform01(rng);
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return static_cast<std::uint64_t>(it - cdf_.begin());
}

}  // namespace qpack
