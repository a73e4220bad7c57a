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

#include "qpack/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpack/error.hpp"
#include "qpack/parallel.hpp"

namespace qpack {

namespace {

std::string fmt(double v) { return format_number(v, 6); }

Json assertions_json(const std::vector<Assertion>& as) {
  Json out = Json::array();
  for (const auto& a : as)
    out.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  return out;
}

Json params_json(const QaoaParams& p) {
  return {{"alphas", p.alphas}, {"betas", p.betas}};
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& ref) {
  const std::filesystem::path p(ref);
  return p.is_absolute() ? p : base / p;
}

PackingScenario scenario_ref(const Json& j, const std::filesystem::path& base) {
  if (j.is_string()) return scenario_from_json(read_json_file(resolve(base, j.get<std::string>())));
  return scenario_from_json(j);
}

std::vector<std::array<int, 3>> indices_from_json(const Json& j) {
  std::vector<std::array<int, 3>> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3)
      throw FormatError("lattice indices need two or three integers");
    out.push_back({e[0].get<int>(), e[1].get<int>(), e.size() == 3 ? e[2].get<int>() : 0});
  }
  return out;
}

InstanceSpec instance_from_json(const Json& j, const std::filesystem::path& base) {
  InstanceSpec spec;
  spec.scenario = scenario_ref(j.at("scenario"), base);
  if (j.contains("lattice_indices"))
    spec.lattice_indices = indices_from_json(j.at("lattice_indices"));
  return spec;
}

TrainConfig train_from_json(const Json& j) {
  TrainConfig t;
  if (!j.is_object()) return t;
  t.starts = j.value("starts", t.starts);
  t.max_evaluations = j.value("max_evaluations", t.max_evaluations);
  t.initial_step = j.value("initial_step", t.initial_step);
  t.ramp = j.value("ramp", t.ramp);
  t.perturbation = j.value("perturbation", t.perturbation);
  t.max_qubits = j.value("max_qubits", t.max_qubits);
  return t;
}

template <typename F>
auto config_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw FormatError(std::string(what) + " config: " + e.what());
  }
}

double combined_se(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

bool ExperimentReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const Assertion& a) { return a.passed; });
}

void ExperimentReport::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& [name, text] : csv) write_text_file(dir / name, text);
  Json s = summary;
  s["experiment"] = name;
  s["assertions"] = assertions_json(assertions);
  s["passed"] = passed();
  write_json_file(dir / "summary.json", s);
}

PackingGraph InstanceSpec::build() const {
  const PackingGraph g = build_graph(scenario);
  if (!lattice_indices) return g;
  return extract_subgraph(g, nodes_at_lattice_indices(g, *lattice_indices));
}

ExperimentReport run_lambda_sweep(const LambdaSweepConfig& cfg) {
  const PackingGraph g = cfg.instance.build();
  DepthSweepOptions opts;
  opts.shots = cfg.shots;
  opts.seed = cfg.seed;
  opts.train = cfg.train;
  const auto rows = depth_sweep(mis_instance_factory(g), cfg.depths, cfg.lambdas, opts);

  ExperimentReport rep;
  rep.name = "lambda-sweep";
  rep.csv["lambda_sweep.csv"] = depth_sweep_csv(rows);
  rep.summary["nodes"] = g.size();
  Json table = Json::array();
  for (const auto& r : rows)
    table.push_back({{"lambda", r.lambda},
                     {"p", r.p},
                     {"success_probability", r.success_probability},
                     {"optimum_modal", r.optimum_modal},
                     {"params", params_json(r.params)}});
  rep.summary["rows"] = table;
  for (double lambda : cfg.expect_never_modal) {
    Assertion a;
    a.name = "never_modal(lambda=" + fmt(lambda) + ")";
    std::size_t modal = 0;
    std::size_t seen = 0;
    for (const auto& r : rows)
      if (std::abs(r.lambda - lambda) < 1e-12) {
        ++seen;
        modal += r.optimum_modal ? 1 : 0;
      }
    a.passed = seen > 0 && modal == 0;
    a.detail = std::to_string(modal) + " of " + std::to_string(seen) +
               " depths had the optimum as modal state";
    rep.assertions.push_back(a);
  }
  return rep;
}

ExperimentReport run_depth_sweep(const DepthSweepConfig& cfg) {
  const PackingGraph g = cfg.instance.build();
  const auto [op, layout] = mis_hamiltonian(g, cfg.lambda);
  const auto optimal = mis_optimal_states(g);
  const InstanceFactory factory = [&](double) { return SweepInstance{op, optimal}; };
  DepthSweepOptions opts;
  opts.shots = cfg.shots;
  opts.seed = cfg.seed;
  opts.train = cfg.train;
  const auto ideal = depth_sweep(factory, cfg.depths, {cfg.lambda}, opts);

  ExperimentReport rep;
  rep.name = "depth-sweep";
  rep.csv["ideal.csv"] = depth_sweep_csv(ideal);
  rep.summary["nodes"] = g.size();
  rep.summary["lambda"] = cfg.lambda;
  Json params = Json::array();
  for (const auto& r : ideal) params.push_back({{"p", r.p}, {"params", params_json(r.params)}});
  rep.summary["params"] = params;

  if (cfg.expect_ideal_increase && ideal.size() >= 2) {
    const auto& lo = ideal.front();
    const auto& hi = ideal.back();
    const double se = combined_se(lo.std_error, hi.std_error);
    Assertion a;
    a.name = "ideal_increase";
    a.passed = hi.success_probability - lo.success_probability > cfg.sigmas * se;
    a.detail = "P(p=" + std::to_string(hi.p) + ")=" + fmt(hi.success_probability) +
               " vs P(p=" + std::to_string(lo.p) + ")=" + fmt(lo.success_probability) +
               ", combined SE " + fmt(se);
    rep.assertions.push_back(a);
  }

  if (cfg.calibration) {
    NoiseModel model = noise_from_calibration(*cfg.calibration).scaled(cfg.noise_scale);
    model.idle_noise = cfg.idle_noise;
    const Placement placement = placement_by_coordinates(g, layout, cfg.coupling);
    std::vector<QaoaParams> trained;
    for (const auto& r : ideal) trained.push_back(r.params);
    NoisyRunOptions run;
    run.trajectories = cfg.trajectories;
    run.shots_per_trajectory = cfg.shots_per_trajectory;
    run.seed = cfg.seed;
    run.max_qubits = cfg.train.max_qubits;
    const auto noisy = noisy_depth_sweep(op, x_mixer(op.num_qubits), trained, model,
                                         cfg.coupling, placement, run, optimal);
    rep.csv["noisy.csv"] = noisy_sweep_csv(noisy);
    rep.summary["calibration"] = cfg.calibration->label;
    rep.summary["noise_scale"] = cfg.noise_scale;
    if (cfg.expect_noisy_peak && noisy.size() >= 3) {
      const auto peak = static_cast<std::size_t>(
          std::max_element(noisy.begin(), noisy.end(),
                           [](const auto& a, const auto& b) {
                             return a.success_probability < b.success_probability;
                           }) -
          noisy.begin());
      const auto& top = noisy[peak];
      const auto& last = noisy.back();
      const double se = combined_se(top.std_error, last.std_error);
      Assertion a;
      a.name = "noisy_peak";
      a.passed = peak > 0 && peak + 1 < noisy.size() &&
                 top.success_probability - last.success_probability > cfg.sigmas * se;
      a.detail = "peak at p=" + std::to_string(top.p) + " with " +
                 fmt(top.success_probability) + ", P(p=" + std::to_string(last.p) +
                 ")=" + fmt(last.success_probability) + ", combined SE " + fmt(se);
      rep.assertions.push_back(a);
    }
  }
  return rep;
}

ExperimentReport run_param_conc(const ParamConcConfig& cfg) {
  const PackingGraph full = cfg.full.build();
  const PackingGraph sub = extract_subgraph(full, nodes_at_lattice_indices(full, cfg.sub_indices));
  if (sub.size() == 0) throw InvalidArgument("sub-instance selects no nodes");
  DepthSweepOptions opts;
  opts.shots = cfg.shots;
  opts.seed = cfg.seed;
  opts.train = cfg.train;
  const auto sub_rows = depth_sweep(mis_instance_factory(sub), cfg.depths, {cfg.lambda}, opts);
  const auto full_rows = depth_sweep(mis_instance_factory(full), cfg.depths, {cfg.lambda}, opts);
  const auto full_op = mis_hamiltonian(full, cfg.lambda).first;
  const auto full_opt = mis_optimal_states(full);

  ExperimentReport rep;
  rep.name = "param-conc";
  std::ostringstream csv;
  csv << "p,sub_on_sub,full_on_sub,full_on_full,exact_sub_on_sub,exact_full_on_sub,"
         "exact_full_on_full,exact_ratio\n";
  Json table = Json::array();
  std::optional<double> checked_ratio;
  for (std::size_t i = 0; i < sub_rows.size(); ++i) {
    const auto& s = sub_rows[i];
    const auto& f = full_rows[i];
    const auto transfer = transfer_params(s.params, f.p, full_op, x_mixer(full_op.num_qubits),
                                          cfg.shots, stream_seed(cfg.seed, 2000 + f.p),
                                          full_opt, cfg.train.max_qubits);
    const double ratio = transfer.exact_success_probability / f.exact_success_probability;
    csv << s.p << ',' << fmt(s.success_probability) << ',' << fmt(transfer.success_probability)
        << ',' << fmt(f.success_probability) << ',' << fmt(s.exact_success_probability) << ','
        << fmt(transfer.exact_success_probability) << ',' << fmt(f.exact_success_probability)
        << ',' << fmt(ratio) << '\n';
    table.push_back({{"p", s.p},
                     {"sub_params", params_json(s.params)},
                     {"full_params", params_json(f.params)},
                     {"exact_ratio", ratio}});
    if (s.p == cfg.check_p) checked_ratio = ratio;
  }
  rep.csv["param_conc.csv"] = csv.str();
  rep.summary["sub_nodes"] = sub.size();
  rep.summary["full_nodes"] = full.size();
  rep.summary["rows"] = table;
  Assertion a;
  a.name = "transfer_ratio(p=" + std::to_string(cfg.check_p) + ")";
  a.passed = checked_ratio && *checked_ratio >= cfg.min_ratio;
  a.detail = checked_ratio ? "C_full(rho_sub) / C_full(rho_full) = " + fmt(*checked_ratio) +
                                 ", required >= " + fmt(cfg.min_ratio)
                           : "depth not in the sweep";
  rep.assertions.push_back(a);
  return rep;
}

LambdaSweepConfig lambda_sweep_config(const Json& j, const std::filesystem::path& base) {
  return config_guard("lambda-sweep", [&] {
    LambdaSweepConfig c;
    c.instance = instance_from_json(j, base);
    c.lambdas = j.value("lambdas", c.lambdas);
    c.depths = j.value("depths", c.depths);
    c.shots = j.value("shots", c.shots);
    c.seed = j.value("seed", c.seed);
    c.train = train_from_json(j.value("train", Json::object()));
    if (j.contains("expect"))
      c.expect_never_modal = j.at("expect").value("never_modal", std::vector<double>{});
    return c;
  });
}

DepthSweepConfig depth_sweep_config(const Json& j, const std::filesystem::path& base) {
  return config_guard("depth-sweep", [&] {
    DepthSweepConfig c;
    c.instance = instance_from_json(j, base);
    c.lambda = j.value("lambda", c.lambda);
    c.depths = j.value("depths", c.depths);
    c.shots = j.value("shots", c.shots);
    c.seed = j.value("seed", c.seed);
    c.train = train_from_json(j.value("train", Json::object()));
    if (j.contains("calibration"))
      c.calibration = calibration_from_json(
          read_json_file(resolve(base, j.at("calibration").get<std::string>())));
    if (j.contains("coupling"))
      c.coupling = coupling_from_json(
          read_json_file(resolve(base, j.at("coupling").get<std::string>())));
    c.noise_scale = j.value("noise_scale", c.noise_scale);
    c.idle_noise = j.value("idle_noise", c.idle_noise);
    c.trajectories = j.value("trajectories", c.trajectories);
    c.shots_per_trajectory = j.value("shots_per_trajectory", c.shots_per_trajectory);
    c.sigmas = j.value("sigmas", c.sigmas);
    if (j.contains("expect")) {
      c.expect_ideal_increase = j.at("expect").value("ideal_increase", c.expect_ideal_increase);
      c.expect_noisy_peak = j.at("expect").value("noisy_peak", c.expect_noisy_peak);
    }
    return c;
  });
}

ParamConcConfig param_conc_config(const Json& j, const std::filesystem::path& base) {
  return config_guard("param-conc", [&] {
    ParamConcConfig c;
    c.full = instance_from_json(j, base);
    c.sub_indices = indices_from_json(j.at("sub_lattice_indices"));
    c.lambda = j.value("lambda", c.lambda);
    c.depths = j.value("depths", c.depths);
    c.shots = j.value("shots", c.shots);
    c.seed = j.value("seed", c.seed);
    c.train = train_from_json(j.value("train", Json::object()));
    c.check_p = j.value("check_p", c.check_p);
    c.min_ratio = j.value("min_ratio", c.min_ratio);
    return c;
  });
}

}  // namespace qpack
