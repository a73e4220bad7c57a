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

#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qpack/circuit.hpp"
#include "qpack/classical_solver.hpp"
#include "qpack/error.hpp"
#include "qpack/experiments.hpp"
#include "qpack/hamiltonian.hpp"
#include "qpack/io.hpp"
#include "qpack/noise.hpp"
#include "qpack/qaoa.hpp"
#include "qpack/resources.hpp"

namespace qpack::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kVersion = "qpack 1.0.0";

std::string version_text() {
  std::ostringstream s;
  s << kVersion << "\nformats: " << kScenarioFormat << ' ' << kGraphFormat << ' ' << kHamFormat
    << ' ' << kQaoaFormat << ' ' << kParamsFormat << ' ' << kCircuitFormat << ' '
    << kCalibrationFormat << ' ' << kCouplingFormat << ' ' << kSolutionFormat;
  return s.str();
}

// Thrown by subcommands to report a failed check with exit code 1.
class CheckFailed : public Error {
 public:
  using Error::Error;
};

void emit(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-")
    out << dump(j);
  else
    write_json_file(path, j);
}

void emit_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_text_file(path, text);
}

// ---- graph ---------------------------------------------------------------

struct GraphArgs {
  std::string scenario;
  std::string out;
};

int cmd_graph(const GraphArgs& a, std::ostream& out, std::ostream& err) {
  const auto scenario = scenario_from_json(read_json_file(a.scenario));
  const auto g = build_graph(scenario);
  emit(graph_to_json(g), a.out, out);
  err << "graph: " << g.size() << " nodes, " << g.edges.size() << " edges, "
      << g.candidate_count << " lattice candidates\n";
  return kExitOk;
}

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
  std::string graph;
  std::string scenario;
  std::string method = "exact";
  std::vector<double> sweep;
  double lambda = kDefaultLambda;
  std::uint64_t seed = 0;
  std::size_t sweeps = 1000;
  std::size_t restarts = 10;
  double time_budget = 60.0;
  bool all = false;
  std::string out;
  std::string csv;
};

PackingGraph load_graph(const std::string& graph, const std::string& scenario) {
  if (!graph.empty()) return graph_from_json(read_json_file(graph));
  if (!scenario.empty()) return build_graph(scenario_from_json(read_json_file(scenario)));
  throw InvalidArgument("one of --graph or --scenario is required");
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  if (!a.sweep.empty()) {
    const PackingScenario scenario =
        !a.scenario.empty() ? scenario_from_json(read_json_file(a.scenario))
                            : load_graph(a.graph, a.scenario).scenario;
    SweepOptions opts;
    opts.time_budget_s = a.time_budget;
    opts.seed = a.seed;
    opts.lambda = a.lambda;
    opts.anneal.sweeps = a.sweeps;
    opts.anneal.restarts = a.restarts;
    if (a.method == "anneal") opts.exact_node_limit = 0;
    const auto rows = spacing_sweep(scenario, a.sweep, opts);
    emit_text(sweep_csv(rows), a.csv, out);
    return kExitOk;
  }
  const PackingGraph g = load_graph(a.graph, a.scenario);
  Json j;
  if (a.method == "exact") {
    MisOptions mo;
    mo.time_budget_s = a.time_budget;
    mo.enumerate_all = a.all;
    try {
      j = solution_to_json(exact_mis(g, mo));
      j["status"] = "optimal";
    } catch (const SolverTimeout& t) {
      j = solution_to_json(t.best_so_far());
      j["status"] = "timeout";
    }
  } else {
    AnnealSchedule sched;
    sched.sweeps = a.sweeps;
    sched.restarts = a.restarts;
    j = solution_to_json(anneal_mis(g, a.lambda, sched, a.seed));
    j["status"] = "heuristic";
    j["seed"] = a.seed;
  }
  j["method"] = a.method;
  emit(j, a.out, out);
  if (!a.csv.empty()) {
    std::ostringstream row;
    row << "nodes,edges,mis_size,density,solver\n"
        << g.size() << ',' << g.edges.size() << ',' << j["circles"].get<std::size_t>() << ','
        << format_number(j["density"].get<double>()) << ',' << j["status"].get<std::string>()
        << '\n';
    write_text_file(a.csv, row.str());
  }
  err << "solve: " << j["circles"] << " circles, density " << j["density"] << " ("
      << j["status"].get<std::string>() << ")\n";
  return kExitOk;
}

// ---- qaoa / compile shared loading ----------------------------------------

struct Problem {
  IsingOperator op;
  QubitLayout layout;
  std::optional<PackingGraph> graph;
  std::optional<double> lambda;
  std::vector<std::uint64_t> optimal;
};

Problem load_problem(const std::string& ham, const std::string& graph, double lambda,
                     const std::string& formulation) {
  Problem pr;
  if (!ham.empty()) {
    auto h = hamiltonian_from_json(read_json_file(ham));
    pr.op = expand_projectors(h.op);
    pr.layout = h.layout;
    pr.lambda = h.lambda;
    pr.optimal = ground_states(pr.op);
    return pr;
  }
  if (graph.empty()) throw InvalidArgument("one of --ham or --graph is required");
  pr.graph = graph_from_json(read_json_file(graph));
  pr.lambda = lambda;
  const Formulation f = formulation_from_string(formulation);
  if (f == Formulation::mis) {
    auto [op, layout] = mis_hamiltonian(*pr.graph, lambda);
    pr.op = std::move(op);
    pr.layout = std::move(layout);
    pr.optimal = mis_optimal_states(*pr.graph);
  } else {
    const auto weights = default_volume_weights(pr.graph->scenario);
    auto [op, layout] = f == Formulation::second_quantization
                            ? second_quantization_hamiltonian(*pr.graph, lambda, weights)
                            : first_quantization_hamiltonian(*pr.graph, weights,
                                                             {lambda, {}, false});
    pr.op = expand_projectors(op);
    pr.layout = std::move(layout);
    pr.optimal = ground_states(pr.op);
  }
  return pr;
}

Placement problem_placement(const Problem& pr, const CouplingMap& map) {
  if (pr.graph && pr.layout.formulation != Formulation::first_quantization && map.coords)
    return placement_by_coordinates(*pr.graph, pr.layout, map);
  Placement identity(pr.op.num_qubits);
  for (std::size_t q = 0; q < identity.size(); ++q) identity[q] = q;
  return identity;
}

CouplingMap load_coupling(const std::string& path) {
  return path.empty() ? garnet_coupling_map() : coupling_from_json(read_json_file(path));
}

// ---- qaoa ----------------------------------------------------------------

struct QaoaArgs {
  std::string ham;
  std::string graph;
  std::string formulation = "mis";
  std::size_t p = 1;
  double lambda = kDefaultLambda;
  std::uint64_t shots = 20000;
  std::uint64_t seed = 0;
  std::size_t starts = 8;
  std::size_t max_evaluations = 0;
  std::size_t qubit_cap = kDefaultQubitCap;
  std::string noise;
  std::string coupling;
  std::uint64_t trajectories = 1000;
  std::uint64_t shots_per_trajectory = 0;
  double noise_scale = 1.0;
  std::string transfer_from;
  std::string out;
  std::string circuit_out;
};

int cmd_qaoa(const QaoaArgs& a, std::ostream& out, std::ostream& err) {
  const Problem pr = load_problem(a.ham, a.graph, a.lambda, a.formulation);
  const CostDiagonal cost(pr.op, a.qubit_cap);
  const XMixer mixer = x_mixer(pr.op.num_qubits);

  QaoaResult result;
  std::vector<double> trace;
  QaoaParams params;
  if (!a.transfer_from.empty()) {
    params = params_from_json(read_json_file(a.transfer_from));
    result = transfer_params(params, a.p, pr.op, mixer, a.shots, a.seed, pr.optimal,
                             a.qubit_cap);
  } else {
    TrainConfig cfg;
    cfg.starts = a.starts;
    cfg.max_evaluations = a.max_evaluations;
    cfg.max_qubits = a.qubit_cap;
    const auto trained = train(cost, mixer, a.p, cfg, a.seed);
    params = trained.params;
    trace = trained.energy_trace;
    result = sample(cost, mixer, params, a.shots, a.seed, pr.optimal);
  }
  result.energy_trace = trace;

  QaoaRecord rec;
  if (!a.noise.empty()) {
    const auto cal = calibration_from_json(read_json_file(a.noise));
    const NoiseModel model = noise_from_calibration(cal).scaled(a.noise_scale);
    const CouplingMap map = load_coupling(a.coupling);
    const auto circuit = compile_qaoa(pr.op, mixer, params, map, problem_placement(pr, map));
    if (!a.circuit_out.empty()) write_json_file(a.circuit_out, circuit_to_json(circuit));
    NoisyRunOptions run;
    run.trajectories = a.trajectories;
    run.shots_per_trajectory =
        a.shots_per_trajectory ? a.shots_per_trajectory
                               : std::max<std::uint64_t>(1, (a.shots + a.trajectories - 1) /
                                                                a.trajectories);
    run.seed = a.seed;
    run.max_qubits = a.qubit_cap;
    const auto noisy = run_noisy(circuit, model, run, pr.optimal);
    result.histogram = noisy.histogram;
    result.success_probability = noisy.success_probability;
    result.shots = noisy.shots;
    rec.mode = "noisy";
    rec.std_error = noisy.std_error;
    rec.trajectories = noisy.trajectories;
  }
  rec.result = result;
  rec.lambda = pr.lambda;
  emit(qaoa_to_json(rec), a.out, out);

  const std::string modal = modal_bitstring(result.histogram);
  const bool modal_optimal = std::binary_search(pr.optimal.begin(), pr.optimal.end(),
                                                bits_to_index(modal));
  err << "qaoa: p=" << params.layers() << " success " << result.success_probability
      << ", modal state " << modal << (modal_optimal ? " (optimal)" : " (not optimal)")
      << '\n';
  return kExitOk;
}

// ---- compile -------------------------------------------------------------

struct CompileArgs {
  std::string ham;
  std::string graph;
  std::string formulation = "mis";
  double lambda = kDefaultLambda;
  std::string params;
  std::string coupling;
  std::string out;
};

int cmd_compile(const CompileArgs& a, std::ostream& out, std::ostream& err) {
  const Problem pr = load_problem(a.ham, a.graph, a.lambda, a.formulation);
  const QaoaParams params = params_from_json(read_json_file(a.params));
  const CouplingMap map = load_coupling(a.coupling);
  const XMixer mixer = x_mixer(pr.op.num_qubits);
  auto circuit = compile_qaoa(pr.op, mixer, params, map, problem_placement(pr, map));
  circuit.metadata.lambda = pr.lambda;
  emit(circuit_to_json(circuit), a.out, out);
  const auto report = verify_circuit(circuit, pr.op, mixer, params);
  err << "compile: " << circuit.metadata.cz_count << " CZ, depth " << circuit.metadata.depth
      << ", ZZ depth " << circuit.metadata.zz_depth << ", max deviation "
      << report.max_deviation << '\n';
  if (!report.passed) throw CheckFailed("compiled circuit does not match the ansatz");
  return kExitOk;
}

// ---- experiment ----------------------------------------------------------

struct ExperimentArgs {
  std::string name;
  std::string config;
  std::string out;
};

int cmd_experiment(const ExperimentArgs& a, std::ostream& out, std::ostream&) {
  const fs::path config_path(a.config);
  const Json j = read_json_file(config_path);
  const fs::path base = config_path.parent_path();
  ExperimentReport rep;
  if (a.name == "lambda-sweep")
    rep = run_lambda_sweep(lambda_sweep_config(j, base));
  else if (a.name == "depth-sweep")
    rep = run_depth_sweep(depth_sweep_config(j, base));
  else
    rep = run_param_conc(param_conc_config(j, base));
  const fs::path dir = a.out.empty() ? fs::path("results") / a.name : fs::path(a.out);
  rep.write(dir);
  for (const auto& as : rep.assertions)
    out << (as.passed ? "PASS " : "FAIL ") << as.name << ": " << as.detail << '\n';
  out << "wrote " << dir.string() << '\n';
  return rep.passed() ? kExitOk : kExitFailure;
}

// ---- estimate ------------------------------------------------------------

struct EstimateArgs {
  std::size_t radii = 1;
  std::size_t q = 1;
  int d = 2;
  double rm = 1.0;
  double rb = 1.0;
  std::string formulation = "both";
  std::string scenario;
  std::string csv;
};

int cmd_estimate(const EstimateArgs& a, std::ostream& out, std::ostream&) {
  ScalingInput in{a.radii, a.q, a.d, a.rm, a.rb};
  std::optional<PackingScenario> scenario;
  if (!a.scenario.empty()) {
    scenario = scenario_from_json(read_json_file(a.scenario));
    in = scaling_input(*scenario);
  }
  in.validate();
  std::vector<std::string> which;
  if (a.formulation == "second" || a.formulation == "both") which.push_back("second");
  if (a.formulation == "first" || a.formulation == "both") which.push_back("first");

  struct Row {
    std::string formulation;
    std::uint64_t qubits = 0, cnots = 0;
    double qubits_exact = 0, cnots_exact = 0;
    std::size_t width = 1;
    double qubits_approx = 0, cnots_approx = 0;
    std::optional<EmpiricalReport> actual;
  };
  std::vector<Row> rows;
  bool violated = false;
  for (const auto& f : which) {
    Row r;
    r.formulation = f;
    if (f == "second") {
      const auto b = second_quant_bounds(in);
      r.qubits = b.qubits.ceiling;
      r.cnots = b.cnots.ceiling;
      r.qubits_exact = b.qubits.value;
      r.cnots_exact = b.cnots.value;
      r.qubits_approx = b.qubits.value;
      r.cnots_approx = b.cnots.value;
    } else {
      const auto b = first_quant_bounds(in);
      r.qubits = b.qubits.ceiling;
      r.cnots = b.cnots.ceiling;
      r.qubits_exact = b.qubits.value;
      r.cnots_exact = b.cnots.value;
      r.width = b.register_width;
      r.qubits_approx = b.qubits_approx;
      r.cnots_approx = b.cnots_approx;
    }
    if (scenario) {
      r.actual = empirical_vs_bound(*scenario, f == "second" ? Formulation::second_quantization
                                                             : Formulation::first_quantization);
      violated = violated || r.actual->violated;
    }
    rows.push_back(std::move(r));
  }

  std::ostringstream csv;
  csv << "formulation,radii,q,d,rm,rb,register_width,qubits_bound,cnots_bound,qubits_exact,"
         "cnots_exact,qubits_approx,cnots_approx,actual_qubits,actual_terms,qubit_slack,"
         "term_slack\n";
  out << std::left << std::setw(12) << "formulation" << std::setw(8) << "width"
      << std::setw(14) << "qubits_bound" << std::setw(14) << "cnots_bound" << std::setw(15)
      << "actual_qubits" << std::setw(14) << "actual_terms" << "slack\n";
  for (const auto& r : rows) {
    const std::string aq = r.actual ? std::to_string(r.actual->actual_qubits) : "-";
    const std::string at = r.actual ? std::to_string(r.actual->actual_terms) : "-";
    const std::string qs = r.actual ? format_number(r.actual->qubit_slack, 4) : "-";
    const std::string ts = r.actual ? format_number(r.actual->term_slack, 4) : "-";
    out << std::left << std::setw(12) << r.formulation << std::setw(8) << r.width
        << std::setw(14) << r.qubits << std::setw(14) << r.cnots << std::setw(15) << aq
        << std::setw(14) << at << (r.actual ? qs + "/" + ts : "-") << '\n';
    csv << r.formulation << ',' << in.num_radii << ',' << in.points_per_side << ','
        << in.dimension << ',' << format_number(in.max_radius) << ','
        << format_number(in.boundary_radius) << ',' << r.width << ',' << r.qubits << ','
        << r.cnots << ',' << format_number(r.qubits_exact) << ','
        << format_number(r.cnots_exact) << ',' << format_number(r.qubits_approx) << ','
        << format_number(r.cnots_approx) << ',' << aq << ',' << at << ',' << qs << ','
        << ts << '\n';
  }
  if (scenario)
    out << "assumption: " << rows.front().actual->assumption << '\n';
  if (!a.csv.empty()) emit_text(csv.str(), a.csv, out);
  if (violated) throw CheckFailed("a resource bound is violated");
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discretized sphere packing as maximum independent set, with QAOA tooling",
               "qpack"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_text());

  GraphArgs ga;
  auto* graph = app.add_subcommand("graph", "Build the packing graph of a scenario");
  graph->add_option("--scenario", ga.scenario, "Scenario JSON")->required();
  graph->add_option("--out", ga.out, "Output graph JSON (default stdout)");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve the packing classically");
  solve->add_option("--graph", sa.graph, "Graph JSON");
  solve->add_option("--scenario", sa.scenario, "Scenario JSON");
  solve->add_option("--method", sa.method)->check(CLI::IsMember({"exact", "anneal"}));
  solve->add_option("--sweep", sa.sweep, "Comma-separated lattice spacings")->delimiter(',');
  solve->add_option("--lambda", sa.lambda, "Penalty weight for annealing");
  solve->add_option("--seed", sa.seed);
  solve->add_option("--sweeps", sa.sweeps)->check(CLI::PositiveNumber);
  solve->add_option("--restarts", sa.restarts)->check(CLI::PositiveNumber);
  solve->add_option("--time-budget", sa.time_budget, "Seconds per exact solve");
  solve->add_flag("--all", sa.all, "List every optimum");
  solve->add_option("--out", sa.out, "Solution JSON (default stdout)");
  solve->add_option("--csv", sa.csv, "CSV output");

  QaoaArgs qa;
  auto* qaoa = app.add_subcommand("qaoa", "Train and sample QAOA, ideal or noisy");
  qaoa->add_option("--ham", qa.ham, "Hamiltonian JSON");
  qaoa->add_option("--graph", qa.graph, "Graph JSON");
  qaoa->add_option("--formulation", qa.formulation)
      ->check(CLI::IsMember({"mis", "first", "second"}));
  qaoa->add_option("--p", qa.p, "Layers")->required()->check(CLI::PositiveNumber);
  qaoa->add_option("--lambda", qa.lambda);
  qaoa->add_option("--shots", qa.shots)->check(CLI::PositiveNumber);
  qaoa->add_option("--seed", qa.seed);
  qaoa->add_option("--starts", qa.starts)->check(CLI::PositiveNumber);
  qaoa->add_option("--max-evaluations", qa.max_evaluations);
  qaoa->add_option("--qubit-cap", qa.qubit_cap);
  qaoa->add_option("--noise", qa.noise, "Calibration JSON");
  qaoa->add_option("--coupling", qa.coupling, "Coupling map JSON (default Garnet)");
  qaoa->add_option("--trajectories", qa.trajectories)->check(CLI::PositiveNumber);
  qaoa->add_option("--shots-per-trajectory", qa.shots_per_trajectory);
  qaoa->add_option("--noise-scale", qa.noise_scale)->check(CLI::NonNegativeNumber);
  qaoa->add_option("--transfer-from", qa.transfer_from, "Params or result JSON");
  qaoa->add_option("--out", qa.out, "Result JSON (default stdout)");
  qaoa->add_option("--circuit-out", qa.circuit_out, "Compiled circuit JSON (noisy runs)");

  CompileArgs ca;
  auto* compile = app.add_subcommand("compile", "Compile an ansatz to PRX/CZ and verify it");
  compile->add_option("--ham", ca.ham);
  compile->add_option("--graph", ca.graph);
  compile->add_option("--formulation", ca.formulation)
      ->check(CLI::IsMember({"mis", "first", "second"}));
  compile->add_option("--lambda", ca.lambda);
  compile->add_option("--params", ca.params, "Params or result JSON")->required();
  compile->add_option("--coupling", ca.coupling);
  compile->add_option("--out", ca.out);

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "Run a study from a config file");
  experiment->add_option("name", ea.name)
      ->required()
      ->check(CLI::IsMember({"lambda-sweep", "depth-sweep", "param-conc"}));
  experiment->add_option("--config", ea.config)->required();
  experiment->add_option("--out", ea.out, "Report directory");

  EstimateArgs ra;
  auto* estimate = app.add_subcommand("estimate", "Evaluate qubit and two-qubit gate bounds");
  estimate->add_option("--radii", ra.radii)->check(CLI::PositiveNumber);
  estimate->add_option("--q", ra.q)->check(CLI::PositiveNumber);
  estimate->add_option("--d", ra.d)->check(CLI::IsMember({2, 3}));
  estimate->add_option("--rm", ra.rm);
  estimate->add_option("--rb", ra.rb);
  estimate->add_option("--formulation", ra.formulation)
      ->check(CLI::IsMember({"first", "second", "both"}));
  estimate->add_option("--scenario", ra.scenario, "Compare against a constructed instance");
  estimate->add_option("--csv", ra.csv);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (graph->parsed()) return cmd_graph(ga, out, err);
    if (solve->parsed()) return cmd_solve(sa, out, err);
    if (qaoa->parsed()) return cmd_qaoa(qa, out, err);
    if (compile->parsed()) return cmd_compile(ca, out, err);
    if (experiment->parsed()) return cmd_experiment(ea, out, err);
    if (estimate->parsed()) return cmd_estimate(ra, out, err);
  } catch (const CheckFailed& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitFailure;
  } catch (const FormatError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LayoutError& e) {
    err << "layout error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const QubitCapExceeded& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace qpack::cli
