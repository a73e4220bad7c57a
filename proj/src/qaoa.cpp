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

#include "qpack/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "qpack/classical_solver.hpp"
#include "qpack/error.hpp"
#include "qpack/optimize.hpp"
#include "qpack/parallel.hpp"

namespace qpack {

namespace {

// Above this many distinct energies the per-level phase table stops paying off.
constexpr std::size_t kMaxLevels = 1 << 12;
constexpr double kLevelTol = 1e-12;

double wrap_beta(double b) {
  b = std::fmod(b, std::numbers::pi);
  return b < 0.0 ? b + std::numbers::pi : b;
}

}  // namespace

void QaoaParams::validate() const {
  if (alphas.empty()) throw ValidationError("layers", "QAOA needs p >= 1 layers");
  if (alphas.size() != betas.size())
    throw ValidationError("betas", "alphas and betas differ in length");
}

CostDiagonal::CostDiagonal(const IsingOperator& op, std::size_t max_qubits)
    : num_qubits_(op.num_qubits) {
  check_qubit_cap(op.num_qubits, max_qubits);
  if (op.has_projectors())
    throw InvalidArgument("cost operator must have projectors expanded");
  energies_ = diagonal(op);

  std::vector<double> sorted = energies_;
  std::sort(sorted.begin(), sorted.end());
  for (double e : sorted) {
    if (levels_.empty() || e - levels_.back() > kLevelTol) levels_.push_back(e);
    if (levels_.size() > kMaxLevels) break;
  }
  if (levels_.size() > kMaxLevels) {
    levels_.clear();
    return;
  }
  level_of_.resize(energies_.size());
  for (std::size_t x = 0; x < energies_.size(); ++x) {
    auto it = std::lower_bound(levels_.begin(), levels_.end(),
                               energies_[x] - kLevelTol);
    level_of_[x] = static_cast<std::uint32_t>(it - levels_.begin());
  }
}

void CostDiagonal::apply_phase(StateVector& psi, double angle) const {
  if (psi.size() != energies_.size())
    throw InvalidArgument("apply_phase: dimension mismatch");
  if (level_of_.empty()) {
    apply_diagonal_evolution(psi, energies_, angle);
    return;
  }
  std::vector<Amplitude> table(levels_.size());
  for (std::size_t k = 0; k < levels_.size(); ++k)
    table[k] = std::polar(1.0, -angle * levels_[k]);
  for (std::size_t x = 0; x < psi.size(); ++x) psi[x] *= table[level_of_[x]];
}

double CostDiagonal::expectation(const StateVector& psi) const {
  if (psi.size() != energies_.size())
    throw InvalidArgument("expectation: dimension mismatch");
  double e = 0.0;
  for (std::size_t x = 0; x < psi.size(); ++x) e += std::norm(psi[x]) * energies_[x];
  return e;
}

StateVector evolve(const CostDiagonal& cost, const XMixer& mixer,
                   const QaoaParams& params) {
  params.validate();
  if (mixer.num_qubits != cost.num_qubits())
    throw InvalidArgument("mixer and cost operator act on different registers");
  StateVector psi = plus_state(cost.num_qubits());
  for (std::size_t k = 0; k < params.layers(); ++k) {
    cost.apply_phase(psi, params.alphas[k]);
    apply_x_mixer(psi, mixer.coefficient, params.betas[k]);
  }
  return psi;
}

StateVector evolve(const IsingOperator& op, const XMixer& mixer,
                   const QaoaParams& params, std::size_t max_qubits) {
  return evolve(CostDiagonal(op, max_qubits), mixer, params);
}

double expectation(const IsingOperator& op, const StateVector& psi) {
  if (op.num_qubits >= 64 || psi.size() != (std::size_t{1} << op.num_qubits))
    throw InvalidArgument("expectation: dimension mismatch");
  const auto energies = diagonal(op);
  double e = 0.0;
  for (std::size_t x = 0; x < psi.size(); ++x) e += std::norm(psi[x]) * energies[x];
  return e;
}

QaoaParams linear_ramp(std::size_t p, double ramp) {
  QaoaParams params;
  for (std::size_t k = 0; k < p; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(p);
    params.alphas.push_back(ramp * t);
    params.betas.push_back(ramp * (1.0 - t));
  }
  return params;
}

QaoaParams interpolate_params(const QaoaParams& params) {
  params.validate();
  const std::size_t p = params.layers();
  auto stretch = [p](const std::vector<double>& v) {
    std::vector<double> out(p + 1);
    for (std::size_t i = 0; i <= p; ++i) {
      const double left = i >= 1 ? v[i - 1] : 0.0;
      const double right = i < p ? v[i] : 0.0;
      out[i] = static_cast<double>(i) / static_cast<double>(p) * left +
               static_cast<double>(p - i) / static_cast<double>(p) * right;
    }
    return out;
  };
  return {stretch(params.alphas), stretch(params.betas)};
}

TrainResult train(const CostDiagonal& cost, const XMixer& mixer, std::size_t p,
                  const TrainConfig& config, std::uint64_t seed) {
  if (p == 0) throw InvalidArgument("train: p must be >= 1");
  if (config.warm_start && config.warm_start->layers() != p)
    throw InvalidArgument("train: warm start has the wrong number of layers");

  auto objective = [&](const std::vector<double>& x) {
    QaoaParams params{{x.begin(), x.begin() + static_cast<std::ptrdiff_t>(p)},
                      {x.begin() + static_cast<std::ptrdiff_t>(p), x.end()}};
    return cost.expectation(evolve(cost, mixer, params));
  };
  auto pack = [](const QaoaParams& params) {
    std::vector<double> x = params.alphas;
    x.insert(x.end(), params.betas.begin(), params.betas.end());
    return x;
  };

  std::vector<std::vector<double>> starts;
  if (config.warm_start) starts.push_back(pack(*config.warm_start));
  const auto ramp = pack(linear_ramp(p, config.ramp));
  starts.push_back(ramp);
  auto rng = stream_rng(seed, 0);
  std::normal_distribution<double> gauss(0.0, config.perturbation);
  while (starts.size() < std::max<std::size_t>(config.starts, 1)) {
    auto x = ramp;
    for (auto& v : x) v += gauss(rng);
    starts.push_back(std::move(x));
  }

  NelderMeadOptions nm;
  nm.initial_step = config.initial_step;
  nm.max_evaluations =
      config.max_evaluations ? config.max_evaluations : 150 * (2 * p + 1);
  TrainResult best;
  bool have = false;
  for (const auto& x0 : starts) {
    auto r = nelder_mead(objective, x0, nm);
    best.evaluations += r.evaluations;
    if (!have || r.value < best.expectation) {
      have = true;
      best.expectation = r.value;
      best.energy_trace = std::move(r.trace);
      best.params = {{r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(p)},
                     {r.x.begin() + static_cast<std::ptrdiff_t>(p), r.x.end()}};
    }
  }
  for (auto& b : best.params.betas) b = wrap_beta(b);
  return best;
}

TrainResult train(const IsingOperator& op, const XMixer& mixer, std::size_t p,
                  const TrainConfig& config, std::uint64_t seed) {
  return train(CostDiagonal(op, config.max_qubits), mixer, p, config, seed);
}

Histogram sample_histogram(std::span<const double> probabilities,
                           std::size_t num_qubits, std::uint64_t shots,
                           std::mt19937_64& rng) {
  const BasisSampler sampler(probabilities);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < shots; ++s) ++counts[sampler(rng)];
  Histogram h;
  for (const auto& [x, c] : counts) h.emplace(index_to_bits(x, num_qubits), c);
  return h;
}

std::string modal_bitstring(const Histogram& h) {
  std::string best;
  std::uint64_t best_count = 0;
  for (const auto& [bits, c] : h)
    if (c > best_count) {
      best = bits;
      best_count = c;
    }
  return best;
}

double success_fraction(const Histogram& h, const std::vector<std::uint64_t>& optimal) {
  std::uint64_t total = 0;
  std::uint64_t hits = 0;
  for (const auto& [bits, c] : h) {
    total += c;
    if (std::binary_search(optimal.begin(), optimal.end(), bits_to_index(bits)))
      hits += c;
  }
  return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
}

QaoaResult sample(const CostDiagonal& cost, const XMixer& mixer,
                  const QaoaParams& params, std::uint64_t shots,
                  std::uint64_t seed, const std::vector<std::uint64_t>& optimal) {
  if (shots == 0) throw InvalidArgument("sample: shots must be >= 1");
  std::vector<std::uint64_t> opt = optimal;
  std::sort(opt.begin(), opt.end());
  const StateVector psi = evolve(cost, mixer, params);
  const auto probs = probabilities(psi);

  QaoaResult result;
  result.params = params;
  result.seed = seed;
  result.shots = shots;
  result.expectation = cost.expectation(psi);
  for (auto x : opt)
    if (x < probs.size()) result.exact_success_probability += probs[x];
  auto rng = stream_rng(seed, 0);
  result.histogram = sample_histogram(probs, cost.num_qubits(), shots, rng);
  result.success_probability = success_fraction(result.histogram, opt);
  return result;
}

QaoaResult sample(const IsingOperator& op, const XMixer& mixer,
                  const QaoaParams& params, std::uint64_t shots,
                  std::uint64_t seed, const std::vector<std::uint64_t>& optimal,
                  std::size_t max_qubits) {
  return sample(CostDiagonal(op, max_qubits), mixer, params, shots, seed, optimal);
}

QaoaResult transfer_params(const QaoaParams& params, std::size_t expected_layers,
                           const IsingOperator& full_op, const XMixer& mixer,
                           std::uint64_t shots, std::uint64_t seed,
                           const std::vector<std::uint64_t>& optimal,
                           std::size_t max_qubits) {
  params.validate();
  if (params.layers() != expected_layers)
    throw InvalidArgument("transfer_params: trained with " +
                          std::to_string(params.layers()) + " layers, expected " +
                          std::to_string(expected_layers));
  return sample(full_op, mixer, params, shots, seed, optimal, max_qubits);
}

std::vector<DepthSweepRow> depth_sweep(const InstanceFactory& factory,
                                       const std::vector<std::size_t>& depths,
                                       const std::vector<double>& lambdas,
                                       const DepthSweepOptions& options) {
  if (depths.empty() || lambdas.empty())
    throw InvalidArgument("depth_sweep: empty depth or lambda list");
  std::vector<std::size_t> ps = depths;
  std::sort(ps.begin(), ps.end());
  std::vector<DepthSweepRow> rows;
  for (double lambda : lambdas) {
    SweepInstance inst = factory(lambda);
    std::sort(inst.optimal.begin(), inst.optimal.end());
    const CostDiagonal cost(inst.op, options.train.max_qubits);
    const XMixer mixer = x_mixer(inst.op.num_qubits);
    std::optional<QaoaParams> previous;
    for (std::size_t p : ps) {
      if (p == 0) throw InvalidArgument("depth_sweep: p must be >= 1");
      TrainConfig cfg = options.train;
      if (options.warm_start && previous) {
        QaoaParams warm = *previous;
        while (warm.layers() < p) warm = interpolate_params(warm);
        cfg.warm_start = warm;
      }
      const auto trained = train(cost, mixer, p, cfg, stream_seed(options.seed, p));
      const auto res = sample(cost, mixer, trained.params, options.shots,
                              stream_seed(options.seed, 1000 + p), inst.optimal);
      DepthSweepRow row;
      row.lambda = lambda;
      row.p = p;
      row.success_probability = res.success_probability;
      row.std_error = std::sqrt(res.success_probability *
                                (1.0 - res.success_probability) /
                                static_cast<double>(options.shots));
      row.exact_success_probability = res.exact_success_probability;
      const std::string modal = modal_bitstring(res.histogram);
      row.optimum_modal = std::binary_search(inst.optimal.begin(), inst.optimal.end(),
                                             bits_to_index(modal));
      row.expectation = trained.expectation;
      row.params = trained.params;
      rows.push_back(std::move(row));
      previous = trained.params;
    }
  }
  return rows;
}

std::vector<std::uint64_t> mis_optimal_states(const PackingGraph& g) {
  MisOptions opts;
  opts.enumerate_all = true;
  const auto sol = exact_mis(g, opts);
  if (sol.optima_truncated) throw Error("too many maximum independent sets to list");
  const auto [op, layout] = mis_hamiltonian(g, kDefaultLambda);
  std::vector<std::uint64_t> out;
  for (const auto& set : sol.all_optima) out.push_back(bits_to_index(layout.encode(set)));
  std::sort(out.begin(), out.end());
  return out;
}

InstanceFactory mis_instance_factory(const PackingGraph& g) {
  auto optimal = std::make_shared<std::vector<std::uint64_t>>(mis_optimal_states(g));
  return [g, optimal](double lambda) {
    return SweepInstance{mis_hamiltonian(g, lambda).first, *optimal};
  };
}

std::vector<std::uint64_t> ground_states(const IsingOperator& op, double tol) {
  const auto energies = diagonal(expand_projectors(op));
  const double emin = *std::min_element(energies.begin(), energies.end());
  std::vector<std::uint64_t> out;
  for (std::size_t x = 0; x < energies.size(); ++x)
    if (energies[x] <= emin + tol) out.push_back(x);
  return out;
}

}  // namespace qpack
