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

#include "qpack/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qpack/error.hpp"
#include "qpack/parallel.hpp"

namespace qpack {

namespace {

constexpr double kKrausTol = 1e-12;

bool in_unit_interval(double p) { return p >= 0.0 && p <= 1.0; }

bool is_fidelity(double f) { return f > 0.0 && f <= 1.0; }

// Rate in 1/ns from a time in microseconds; infinite time means no decay.
double rate_per_ns(double t_us) {
  return std::isinf(t_us) ? 0.0 : 1.0 / (t_us * 1000.0);
}

void check_kraus(const std::vector<Mat2>& ks, const char* name) {
  if (kraus_completeness_error(ks) > kKrausTol)
    throw ValidationError(name, "Kraus operators are not trace preserving");
}

std::size_t pick(double u, std::size_t options) {
  return std::min(options - 1, static_cast<std::size_t>(u * static_cast<double>(options)));
}

}  // namespace

void CalibrationData::validate() const {
  if (qubits.empty()) throw ValidationError("qubits", "calibration lists no qubits");
  std::size_t expect = 0;
  for (const auto& [id, q] : qubits) {
    const std::string field = "qubits." + std::to_string(id);
    if (id != expect++) throw ValidationError("qubits", "qubit ids must be 0..n-1");
    if (!(q.t1_us > 0.0)) throw ValidationError(field + ".t1_us", "T1 must be positive");
    if (!(q.t2_us > 0.0)) throw ValidationError(field + ".t2_us", "T2 must be positive");
    if (q.t2_us > 2.0 * q.t1_us * (1.0 + 1e-12))
      throw ValidationError(field + ".t2_us", "T2 exceeds 2 T1");
    if (!is_fidelity(q.f1q)) throw ValidationError(field + ".f1q", "fidelity outside (0, 1]");
    if (!is_fidelity(q.f_readout))
      throw ValidationError(field + ".f_readout", "fidelity outside (0, 1]");
  }
  for (const auto& [e, f] : cz_fidelity) {
    const std::string field =
        "couplers." + std::to_string(e.first) + "-" + std::to_string(e.second);
    if (e.first >= e.second || !qubits.contains(e.first) || !qubits.contains(e.second))
      throw ValidationError(field, "coupler must join two distinct listed qubits");
    if (!is_fidelity(f)) throw ValidationError(field + ".f_cz", "fidelity outside (0, 1]");
  }
  if (!(gate_1q_ns > 0.0)) throw ValidationError("durations.gate_1q_ns", "must be positive");
  if (!(cz_ns > 0.0)) throw ValidationError("durations.cz_ns", "must be positive");
}

double NoiseModel::gamma(std::size_t q, double t_ns) const {
  return -std::expm1(-qubits.at(q).relax_rate * t_ns);
}

double NoiseModel::lambda_phi(std::size_t q, double t_ns) const {
  return -std::expm1(-qubits.at(q).dephase_rate * t_ns);
}

double NoiseModel::cz_depolarizing(std::size_t a, std::size_t b) const {
  auto it = p2.find(a < b ? Edge{a, b} : Edge{b, a});
  if (it == p2.end())
    throw LayoutError("no CZ calibration for coupler " + std::to_string(a) + "-" +
                      std::to_string(b));
  return it->second;
}

NoiseModel NoiseModel::scaled(double s) const {
  if (!(s >= 0.0)) throw InvalidArgument("noise scale must be non-negative");
  NoiseModel out = *this;
  for (auto& q : out.qubits) {
    q.relax_rate *= s;
    q.dephase_rate *= s;
    q.p1 = std::min(1.0, q.p1 * s);
    q.p_ro = std::min(0.5, q.p_ro * s);
  }
  for (auto& [e, p] : out.p2) p = std::min(1.0, p * s);
  return out;
}

void NoiseModel::validate() const {
  for (std::size_t q = 0; q < qubits.size(); ++q) {
    const auto& n = qubits[q];
    const std::string field = "qubits." + std::to_string(q);
    if (!(n.relax_rate >= 0.0)) throw ValidationError(field + ".relax_rate", "negative");
    if (!(n.dephase_rate >= 0.0)) throw ValidationError(field + ".dephase_rate", "negative");
    if (!in_unit_interval(n.p1)) throw ValidationError(field + ".p1", "outside [0, 1]");
    if (!in_unit_interval(n.p_ro)) throw ValidationError(field + ".p_ro", "outside [0, 1]");
  }
  for (const auto& [e, p] : p2)
    if (!in_unit_interval(p)) throw ValidationError("p2", "outside [0, 1]");
  if (gate_1q_ns < 0.0 || cz_ns < 0.0) throw ValidationError("durations", "negative");
}

NoiseModel NoiseModel::noiseless(std::size_t num_qubits) {
  NoiseModel m;
  m.qubits.assign(num_qubits, {});
  for (std::size_t a = 0; a < num_qubits; ++a)
    for (std::size_t b = a + 1; b < num_qubits; ++b) m.p2[{a, b}] = 0.0;
  m.gate_1q_ns = 1.0;
  m.cz_ns = 1.0;
  return m;
}

NoiseModel noise_from_calibration(const CalibrationData& cal) {
  cal.validate();
  NoiseModel m;
  m.gate_1q_ns = cal.gate_1q_ns;
  m.cz_ns = cal.cz_ns;
  for (const auto& [id, q] : cal.qubits) {
    QubitNoise n;
    n.relax_rate = rate_per_ns(q.t1_us);
    n.dephase_rate = std::max(0.0, rate_per_ns(q.t2_us) - 0.5 * n.relax_rate);
    n.p1 = 1.0 - q.f1q;
    n.p_ro = 1.0 - q.f_readout;
    m.qubits.push_back(n);
  }
  for (const auto& [e, f] : cal.cz_fidelity) m.p2[e] = 1.0 - f;
  m.validate();
  for (std::size_t q = 0; q < m.qubits.size(); ++q)
    for (double t : {m.gate_1q_ns, m.cz_ns}) {
      check_kraus(amplitude_damping_kraus(m.gamma(q, t)), "amplitude_damping");
      check_kraus(phase_damping_kraus(m.lambda_phi(q, t)), "phase_damping");
    }
  return m;
}

std::vector<Mat2> amplitude_damping_kraus(double gamma) {
  return {Mat2{1.0, 0.0, 0.0, std::sqrt(1.0 - gamma)},
          Mat2{0.0, std::sqrt(gamma), 0.0, 0.0}};
}

std::vector<Mat2> phase_damping_kraus(double lambda) {
  return {Mat2{1.0, 0.0, 0.0, std::sqrt(1.0 - lambda)},
          Mat2{0.0, 0.0, 0.0, std::sqrt(lambda)}};
}

double kraus_completeness_error(const std::vector<Mat2>& kraus) {
  Mat2 sum{0.0, 0.0, 0.0, 0.0};
  for (const auto& k : kraus) {
    const Mat2 kk = mat_mul(adjoint(k), k);
    for (std::size_t i = 0; i < 4; ++i) sum[i] += kk[i];
  }
  const Mat2 id = identity2();
  double err = 0.0;
  for (std::size_t i = 0; i < 4; ++i) err = std::max(err, std::abs(sum[i] - id[i]));
  return err;
}

void apply_amplitude_damping(StateVector& psi, std::size_t q, double gamma,
                             std::mt19937_64& rng) {
  if (gamma <= 0.0) return;
  const std::size_t bit = std::size_t{1} << q;
  const double p1 = probability_one(psi, q);
  if (uniform01(rng) < gamma * p1) {
    // K1: |1> -> |0>.
    for (std::size_t x = 0; x < psi.size(); ++x)
      if (x & bit) {
        psi[x ^ bit] = psi[x];
        psi[x] = 0.0;
      }
  } else {
    const double s = std::sqrt(1.0 - gamma);
    for (std::size_t x = 0; x < psi.size(); ++x)
      if (x & bit) psi[x] *= s;
  }
  normalize(psi);
}

void apply_phase_damping(StateVector& psi, std::size_t q, double lambda,
                         std::mt19937_64& rng) {
  if (lambda <= 0.0) return;
  const std::size_t bit = std::size_t{1} << q;
  const double p1 = probability_one(psi, q);
  if (uniform01(rng) < lambda * p1) {
    for (std::size_t x = 0; x < psi.size(); ++x)
      if (!(x & bit)) psi[x] = 0.0;
  } else {
    const double s = std::sqrt(1.0 - lambda);
    for (std::size_t x = 0; x < psi.size(); ++x)
      if (x & bit) psi[x] *= s;
  }
  normalize(psi);
}

void apply_pauli(StateVector& psi, std::size_t q, int k) {
  const std::size_t bit = std::size_t{1} << q;
  switch (k) {
    case 0:
      return;
    case 1:
      for (std::size_t x = 0; x < psi.size(); ++x)
        if (!(x & bit)) std::swap(psi[x], psi[x | bit]);
      return;
    case 2:  // Y = [[0, -i], [i, 0]]
      for (std::size_t x = 0; x < psi.size(); ++x)
        if (!(x & bit)) {
          const Amplitude a0 = psi[x];
          const Amplitude a1 = psi[x | bit];
          psi[x] = Amplitude(a1.imag(), -a1.real());
          psi[x | bit] = Amplitude(-a0.imag(), a0.real());
        }
      return;
    case 3:
      for (std::size_t x = 0; x < psi.size(); ++x)
        if (x & bit) psi[x] = -psi[x];
      return;
    default:
      throw InvalidArgument("Pauli index must be 0..3");
  }
}

void apply_depolarizing(StateVector& psi, std::size_t q, double p, std::mt19937_64& rng) {
  if (p <= 0.0) return;
  if (uniform01(rng) >= p) return;
  apply_pauli(psi, q, 1 + static_cast<int>(pick(uniform01(rng), 3)));
}

void apply_depolarizing2(StateVector& psi, std::size_t a, std::size_t b, double p,
                         std::mt19937_64& rng) {
  if (p <= 0.0) return;
  if (uniform01(rng) >= p) return;
  const std::size_t k = 1 + pick(uniform01(rng), 15);  // 1..15, skipping II
  apply_pauli(psi, a, static_cast<int>(k % 4));
  apply_pauli(psi, b, static_cast<int>(k / 4));
}

NoisyRunResult run_noisy(const CompiledCircuit& circuit, const NoiseModel& model,
                         const NoisyRunOptions& options,
                         const std::vector<std::uint64_t>& optimal) {
  if (options.trajectories == 0 || options.shots_per_trajectory == 0)
    throw InvalidArgument("run_noisy needs at least one trajectory and one shot");
  const std::size_t n = circuit.measured.size();
  check_qubit_cap(n, options.max_qubits);
  if (model.qubits.size() < circuit.num_qubits)
    throw InvalidArgument("noise model covers fewer qubits than the circuit");
  std::vector<std::uint64_t> opt = optimal;
  std::sort(opt.begin(), opt.end());

  std::vector<long> local(circuit.num_qubits, -1);
  for (std::size_t k = 0; k < n; ++k) local[circuit.measured[k]] = static_cast<long>(k);
  auto to_local = [&](std::size_t q) {
    if (local[q] < 0) throw InvalidArgument("circuit acts on an unmeasured qubit");
    return static_cast<std::size_t>(local[q]);
  };
  // Precompute per-layer channel parameters.
  struct Step {
    Gate gate;
    std::size_t a = 0, b = 0;  // local indices
    Mat2 u{};
  };
  struct LayerPlan {
    std::vector<Step> steps;
    std::vector<std::size_t> idle;  // local qubits
    double duration = 0.0;
  };
  std::vector<LayerPlan> plan;
  for (const auto& layer : circuit.layers) {
    LayerPlan lp;
    std::vector<bool> busy(n, false);
    bool has_cz = false;
    for (const auto& g : layer) {
      Step s{g, to_local(g.q0), 0, {}};
      busy[s.a] = true;
      if (g.kind == Gate::Kind::cz) {
        has_cz = true;
        s.b = to_local(g.q1);
        busy[s.b] = true;
        (void)model.cz_depolarizing(g.q0, g.q1);
      } else {
        s.u = prx_matrix(g.theta, g.phi);
      }
      lp.steps.push_back(s);
    }
    lp.duration = has_cz ? model.cz_ns : model.gate_1q_ns;
    for (std::size_t k = 0; k < n; ++k)
      if (!busy[k]) lp.idle.push_back(k);
    plan.push_back(std::move(lp));
  }

  const auto T = options.trajectories;
  const auto S = options.shots_per_trajectory;
  std::vector<std::vector<std::uint64_t>> outcomes(T);
  std::vector<double> success(T, 0.0);
  parallel_for(T, [&](std::size_t t) {
    auto rng = stream_rng(options.seed, t);
    StateVector psi = zero_state(n);
    auto decay = [&](std::size_t k, double dt) {
      const std::size_t phys = circuit.measured[k];
      apply_amplitude_damping(psi, k, model.gamma(phys, dt), rng);
      apply_phase_damping(psi, k, model.lambda_phi(phys, dt), rng);
    };
    for (const auto& lp : plan) {
      for (const auto& s : lp.steps) {
        if (s.gate.kind == Gate::Kind::prx) {
          apply_1q(psi, s.a, s.u);
          decay(s.a, model.gate_1q_ns);
          apply_depolarizing(psi, s.a, model.qubits[s.gate.q0].p1, rng);
        } else {
          apply_cz(psi, s.a, s.b);
          decay(s.a, model.cz_ns);
          decay(s.b, model.cz_ns);
          apply_depolarizing2(psi, s.a, s.b, model.cz_depolarizing(s.gate.q0, s.gate.q1),
                              rng);
        }
      }
      if (model.idle_noise)
        for (auto k : lp.idle) decay(k, lp.duration);
    }
    const auto probs = probabilities(psi);
    const BasisSampler sampler(probs);
    auto& out = outcomes[t];
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < S; ++s) {
      std::uint64_t x = sampler(rng);
      for (std::size_t k = 0; k < n; ++k)
        if (uniform01(rng) < model.qubits[circuit.measured[k]].p_ro) x ^= std::uint64_t{1} << k;
      if (std::binary_search(opt.begin(), opt.end(), x)) ++hits;
      out.push_back(x);
    }
    success[t] = static_cast<double>(hits) / static_cast<double>(S);
  });

  NoisyRunResult result;
  result.trajectories = T;
  result.shots = T * S;
  std::map<std::uint64_t, std::uint64_t> counts;
  for (const auto& out : outcomes)
    for (auto x : out) ++counts[x];
  for (const auto& [x, c] : counts) result.histogram.emplace(index_to_bits(x, n), c);
  double mean = 0.0;
  for (double s : success) mean += s;
  mean /= static_cast<double>(T);
  double var = 0.0;
  for (double s : success) var += (s - mean) * (s - mean);
  var = T > 1 ? var / static_cast<double>(T - 1) : 0.0;
  result.success_probability = mean;
  result.std_error = std::sqrt(var / static_cast<double>(T));
  return result;
}

std::vector<NoisySweepRow> noisy_depth_sweep(const IsingOperator& op,
                                             const XMixer& mixer,
                                             const std::vector<QaoaParams>& params,
                                             const NoiseModel& model,
                                             const CouplingMap& map,
                                             const Placement& placement,
                                             const NoisyRunOptions& options,
                                             const std::vector<std::uint64_t>& optimal) {
  if (params.empty()) throw InvalidArgument("noisy_depth_sweep: no parameter sets");
  std::vector<NoisySweepRow> rows;
  for (const auto& pr : params) {
    const auto circuit = compile_qaoa(op, mixer, pr, map, placement);
    NoisyRunOptions run = options;
    run.seed = stream_seed(options.seed, pr.layers());
    const auto res = run_noisy(circuit, model, run, optimal);
    NoisySweepRow row;
    row.p = pr.layers();
    row.success_probability = res.success_probability;
    row.std_error = res.std_error;
    const auto ideal = probabilities(simulate_circuit(circuit, options.max_qubits));
    for (auto x : optimal)
      if (x < ideal.size()) row.ideal_success_probability += ideal[x];
    row.cz_count = circuit.metadata.cz_count;
    row.depth = circuit.metadata.depth;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qpack
