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


// Two-qubit circuits with a single noise channel switched on, and the exact
// density-matrix distribution each one should produce. Shared by the unit
// tests and the acceptance run.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qpack/circuit.hpp"
#include "qpack/noise.hpp"

namespace channel_cases {

struct Case {
  std::string name;
  qpack::CompiledCircuit circuit;
  qpack::NoiseModel model;
  std::vector<double> expected;  // outcome distribution over 2 bits
};

inline constexpr double kGateNs = 40.0;
inline constexpr double kCzNs = 60.0;

inline qpack::Gate prx(std::size_t q, double theta, double phi) {
  return {qpack::Gate::Kind::prx, q, 0, theta, phi};
}

inline qpack::CompiledCircuit circuit(bool idle_layer) {
  qpack::CompiledCircuit c;
  c.num_qubits = 2;
  c.measured = {0, 1};
  c.virtual_z = {0.0, 0.0};
  if (idle_layer) {
    // Qubit 1 is excited, then waits while qubit 0 is driven twice.
    c.layers = {{prx(0, 1.1, 0.3), prx(1, 2.6, 0.0)}, {prx(0, 0.9, -0.4)}, {prx(0, 0.5, 1.0)}};
  } else {
    c.layers = {{prx(0, 1.1, 0.3), prx(1, 0.7, 1.2)},
                {qpack::Gate{qpack::Gate::Kind::cz, 0, 1, 0.0, 0.0}},
                {prx(0, 0.9, -0.4), prx(1, 1.3, 0.5)}};
  }
  return c;
}

inline qpack::NoiseModel quiet() {
  qpack::NoiseModel m = qpack::NoiseModel::noiseless(2);
  m.gate_1q_ns = kGateNs;
  m.cz_ns = kCzNs;
  m.p2[{0, 1}] = 0.0;
  m.idle_noise = false;
  return m;
}

inline std::vector<qpack::Mat2> ad_kraus(double g) {
  return {qpack::Mat2{1.0, 0.0, 0.0, std::sqrt(1 - g)}, qpack::Mat2{0.0, std::sqrt(g), 0.0, 0.0}};
}

inline std::vector<qpack::Mat2> pd_kraus(double l) {
  return {qpack::Mat2{1.0, 0.0, 0.0, std::sqrt(1 - l)}, qpack::Mat2{0.0, 0.0, 0.0, std::sqrt(l)}};
}

// Exact evolution using the same channel placement as the trajectory
// simulator: damping then depolarizing after each gate, idle damping for
// untouched qubits, readout flips at the end.
inline std::vector<double> exact(const qpack::CompiledCircuit& c, const qpack::NoiseModel& m) {
  qpack::StateVector zero(4);
  zero[0] = 1.0;
  auto rho = oracle::Density::pure(zero);
  auto decay = [&](std::size_t q, double t) {
    const double g = 1 - std::exp(-m.qubits[q].relax_rate * t);
    const double l = 1 - std::exp(-m.qubits[q].dephase_rate * t);
    if (g > 0) rho.kraus1(ad_kraus(g), q);
    if (l > 0) rho.kraus1(pd_kraus(l), q);
  };
  for (const auto& layer : c.layers) {
    bool busy[2] = {false, false};
    bool has_cz = false;
    for (const auto& g : layer) {
      if (g.kind == qpack::Gate::Kind::prx) {
        busy[g.q0] = true;
        rho.unitary(oracle::embed(qpack::prx_matrix(g.theta, g.phi), g.q0, 2));
        decay(g.q0, m.gate_1q_ns);
        rho.depolarize1(g.q0, m.qubits[g.q0].p1);
      } else {
        has_cz = true;
        busy[0] = busy[1] = true;
        rho.unitary(oracle::cz(g.q0, g.q1, 2));
        decay(g.q0, m.cz_ns);
        decay(g.q1, m.cz_ns);
        rho.depolarize2(g.q0, g.q1, m.p2.at({0, 1}));
      }
    }
    if (m.idle_noise)
      for (std::size_t q = 0; q < 2; ++q)
        if (!busy[q]) decay(q, has_cz ? m.cz_ns : m.gate_1q_ns);
  }
  auto p = rho.populations();
  // Independent flips with per-qubit probabilities.
  std::vector<double> out(4, 0.0);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) {
      double w = 1;
      for (std::size_t q = 0; q < 2; ++q) {
        const double f = m.qubits[q].p_ro;
        w *= ((x ^ y) >> q & 1) ? f : 1 - f;
      }
      out[y] += p[x] * w;
    }
  return out;
}

// Rate giving a per-gate probability `prob` over `t` nanoseconds.
inline double rate_for(double prob, double t) { return -std::log(1 - prob) / t; }

inline std::vector<Case> all() {
  std::vector<Case> cases;
  auto add = [&](std::string name, bool idle, const qpack::NoiseModel& m) {
    Case c{std::move(name), circuit(idle), m, {}};
    c.expected = exact(c.circuit, c.model);
    cases.push_back(std::move(c));
  };
  auto m = quiet();
  for (auto& q : m.qubits) q.relax_rate = rate_for(0.15, kGateNs);
  add("amplitude_damping", false, m);

  m = quiet();
  for (auto& q : m.qubits) q.dephase_rate = rate_for(0.3, kGateNs);
  add("phase_damping", false, m);

  m = quiet();
  m.qubits[0].p1 = 0.12;
  m.qubits[1].p1 = 0.2;
  add("depolarizing_1q", false, m);

  m = quiet();
  m.p2[{0, 1}] = 0.25;
  add("depolarizing_2q", false, m);

  m = quiet();
  m.qubits[0].p_ro = 0.05;
  m.qubits[1].p_ro = 0.11;
  add("readout_flip", false, m);

  m = quiet();
  m.idle_noise = true;
  m.qubits[1].relax_rate = rate_for(0.2, kGateNs);
  m.qubits[1].dephase_rate = rate_for(0.1, kGateNs);
  add("idle_damping", true, m);
  return cases;
}

// Empirical distribution of a trajectory run over the 2-bit outcomes.
inline std::vector<double> empirical(const qpack::NoisyRunResult& r) {
  std::vector<double> p(4, 0.0);
  for (const auto& [bits, count] : r.histogram)
    p[qpack::bits_to_index(bits)] += static_cast<double>(count) / static_cast<double>(r.shots);
  return p;
}

}  // namespace channel_cases
