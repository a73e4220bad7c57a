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

#include "qpack/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qpack/error.hpp"

namespace qpack {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

void check_format(const Json& j, const char* format) {
  if (j.contains("format") && j.at("format") != format)
    throw FormatError("expected format " + std::string(format) + ", got " +
                      j.at("format").dump());
}

// Converts JSON library exceptions into FormatError.
template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

Json coord_to_json(const Coord& c, int dimension) {
  Json a = Json::array({c[0], c[1]});
  if (dimension == 3) a.push_back(c[2]);
  return a;
}

Coord coord_from_json(const Json& j) {
  if (!j.is_array() || j.size() < 2 || j.size() > 3)
    throw FormatError("coordinates need two or three components");
  Coord c{j[0].get<double>(), j[1].get<double>(), 0.0};
  if (j.size() == 3) c[2] = j[2].get<double>();
  return c;
}

Json time_to_json(double t) { return std::isinf(t) ? Json("inf") : Json(t); }

double time_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw FormatError("time must be a number or \"inf\"");
  }
  return j.get<double>();
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": malformed JSON: " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  write_text_file(path, dump(j));
}

Json scenario_to_json(const PackingScenario& s) {
  Json j;
  j["format"] = kScenarioFormat;
  j["dimension"] = s.dimension;
  j["boundary_radius"] = s.boundary_radius;
  if (s.dimension == 3) j["cylinder_height"] = s.cylinder_height;
  j["radii"] = s.radii;
  if (s.spacing) j["spacing"] = *s.spacing;
  if (!s.spacing_per_radius.empty()) {
    Json m = Json::object();
    for (const auto& [i, a] : s.spacing_per_radius) m[std::to_string(i)] = a;
    j["spacing_per_radius"] = m;
  }
  Json fixed = Json::array();
  for (const auto& f : s.fixed_placements)
    fixed.push_back({{"center", coord_to_json(f.center, s.dimension)}, {"radius", f.radius}});
  j["fixed_placements"] = fixed;
  j["tangency"] = s.tangency == TangencyRule::allow ? "allow" : "forbid";
  return j;
}

PackingScenario scenario_from_json(const Json& j) {
  return guarded("scenario", [&] {
    check_format(j, kScenarioFormat);
    PackingScenario s;
    s.dimension = require(j, "dimension").get<int>();
    s.boundary_radius = require(j, "boundary_radius").get<double>();
    if (j.contains("cylinder_height")) s.cylinder_height = j.at("cylinder_height").get<double>();
    s.radii = require(j, "radii").get<std::vector<double>>();
    if (j.contains("spacing") && !j.at("spacing").is_null())
      s.spacing = j.at("spacing").get<double>();
    if (j.contains("spacing_per_radius"))
      for (const auto& [k, v] : j.at("spacing_per_radius").items())
        s.spacing_per_radius[std::stoul(k)] = v.get<double>();
    if (j.contains("fixed_placements"))
      for (const auto& f : j.at("fixed_placements"))
        s.fixed_placements.push_back(
            {coord_from_json(require(f, "center")), require(f, "radius").get<double>()});
    if (j.contains("tangency")) {
      const auto t = j.at("tangency").get<std::string>();
      if (t == "allow") s.tangency = TangencyRule::allow;
      else if (t == "forbid") s.tangency = TangencyRule::forbid;
      else throw FormatError("tangency must be \"allow\" or \"forbid\"");
    }
    s.validate();
    return s;
  });
}

Json graph_to_json(const PackingGraph& g) {
  Json j;
  j["format"] = kGraphFormat;
  j["scenario"] = scenario_to_json(g.scenario);
  j["candidate_count"] = g.candidate_count;
  Json nodes = Json::array();
  for (const auto& n : g.nodes)
    nodes.push_back({{"id", n.id},
                     {"coord", coord_to_json(n.coord, g.scenario.dimension)},
                     {"radius_index", n.radius_index}});
  j["nodes"] = nodes;
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.kind});
  j["edges"] = edges;
  return j;
}

PackingGraph graph_from_json(const Json& j) {
  return guarded("graph", [&] {
    check_format(j, kGraphFormat);
    PackingGraph g;
    g.scenario = scenario_from_json(require(j, "scenario"));
    g.candidate_count = j.value("candidate_count", std::size_t{0});
    for (const auto& n : require(j, "nodes")) {
      PackingNode node;
      node.id = require(n, "id").get<std::size_t>();
      node.coord = coord_from_json(require(n, "coord"));
      node.radius_index = n.value("radius_index", std::size_t{0});
      if (node.radius_index >= g.scenario.radii.size())
        throw FormatError("node radius_index out of range");
      if (!g.nodes.empty() && g.nodes.back().id >= node.id)
        throw FormatError("node ids must be strictly increasing");
      g.nodes.push_back(node);
    }
    for (const auto& e : require(j, "edges")) {
      if (!e.is_array() || e.size() < 2) throw FormatError("edge needs [u, v, kind]");
      PackingEdge edge{e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                       e.size() > 2 ? e[2].get<std::size_t>() : 0};
      if (edge.u >= edge.v || !g.contains(edge.u) || !g.contains(edge.v))
        throw FormatError("edge endpoints must be known ids with u < v");
      g.edges.push_back(edge);
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const PackingEdge& a, const PackingEdge& b) {
      return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    return g;
  });
}

Json hamiltonian_to_json(const HamiltonianFile& h) {
  const auto& op = h.op;
  Json j;
  j["format"] = kHamFormat;
  j["num_qubits"] = op.num_qubits;
  j["constant"] = op.constant;
  Json lin = Json::array();
  for (const auto& [q, w] : op.linear) lin.push_back({q, w});
  j["linear"] = lin;
  Json quad = Json::array();
  for (const auto& [e, w] : op.quadratic) quad.push_back({e.first, e.second, w});
  j["quadratic"] = quad;
  Json higher = Json::array();
  for (const auto& [qs, w] : op.higher) higher.push_back({{"qubits", qs}, {"weight", w}});
  j["higher"] = higher;
  Json proj = Json::array();
  for (const auto& p : op.projectors)
    proj.push_back({{"qubits", p.qubits}, {"bits", p.bits}, {"weight", p.weight}});
  j["projectors"] = proj;
  if (h.lambda) j["lambda"] = *h.lambda;

  Json layout;
  layout["formulation"] = to_string(h.layout.formulation);
  layout["register_width"] = h.layout.register_width;
  Json slots = Json::array();
  for (const auto& s : h.layout.slots) slots.push_back({s.node_id, s.bit});
  layout["slots"] = slots;
  Json sites = Json::array();
  for (const auto& s : h.layout.sites) {
    Json cw = Json::array();
    for (const auto& [code, node] : s.codeword_node) cw.push_back({code, node});
    sites.push_back({{"coord", Json::array({s.coord[0], s.coord[1], s.coord[2]})},
                     {"qubits", s.qubits},
                     {"codewords", cw}});
  }
  layout["sites"] = sites;
  j["layout"] = layout;
  return j;
}

HamiltonianFile hamiltonian_from_json(const Json& j) {
  return guarded("hamiltonian", [&] {
    check_format(j, kHamFormat);
    HamiltonianFile h;
    auto& op = h.op;
    op.num_qubits = require(j, "num_qubits").get<std::size_t>();
    op.constant = j.value("constant", 0.0);
    for (const auto& t : j.value("linear", Json::array()))
      op.linear[t.at(0).get<std::size_t>()] = t.at(1).get<double>();
    for (const auto& t : j.value("quadratic", Json::array())) {
      const auto a = t.at(0).get<std::size_t>();
      const auto b = t.at(1).get<std::size_t>();
      if (a >= b) throw FormatError("quadratic terms need i < j");
      op.quadratic[{a, b}] = t.at(2).get<double>();
    }
    for (const auto& t : j.value("higher", Json::array()))
      op.higher[require(t, "qubits").get<std::vector<std::size_t>>()] =
          require(t, "weight").get<double>();
    for (const auto& t : j.value("projectors", Json::array()))
      op.projectors.push_back({require(t, "qubits").get<std::vector<std::size_t>>(),
                               require(t, "bits").get<std::vector<std::uint8_t>>(),
                               require(t, "weight").get<double>()});
    if (j.contains("lambda")) h.lambda = j.at("lambda").get<double>();
    try {
      op.validate();
    } catch (const ValidationError& e) {
      throw FormatError(std::string("invalid operator: ") + e.what());
    }

    if (j.contains("layout")) {
      const auto& l = j.at("layout");
      h.layout.formulation = formulation_from_string(require(l, "formulation").get<std::string>());
      h.layout.register_width = l.value("register_width", std::size_t{1});
      for (const auto& s : require(l, "slots"))
        h.layout.slots.push_back({s.at(0).get<std::size_t>(), s.at(1).get<std::size_t>()});
      for (const auto& s : l.value("sites", Json::array())) {
        SiteRegister reg;
        reg.coord = coord_from_json(require(s, "coord"));
        reg.qubits = require(s, "qubits").get<std::vector<std::size_t>>();
        for (const auto& cw : require(s, "codewords"))
          reg.codeword_node[cw.at(0).get<std::size_t>()] = cw.at(1).get<std::size_t>();
        h.layout.sites.push_back(std::move(reg));
      }
    } else {
      for (std::size_t q = 0; q < op.num_qubits; ++q) h.layout.slots.push_back({q, 0});
    }
    if (h.layout.num_qubits() != op.num_qubits)
      throw FormatError("layout and operator disagree on the qubit count");
    return h;
  });
}

Json params_to_json(const QaoaParams& p) {
  return {{"format", kParamsFormat}, {"p", p.layers()}, {"alphas", p.alphas}, {"betas", p.betas}};
}

QaoaParams params_from_json(const Json& j) {
  return guarded("params", [&] {
    const Json& src = j.contains("params") ? j.at("params") : j;
    QaoaParams p{require(src, "alphas").get<std::vector<double>>(),
                 require(src, "betas").get<std::vector<double>>()};
    try {
      p.validate();
    } catch (const ValidationError& e) {
      throw FormatError(std::string("invalid params: ") + e.what());
    }
    return p;
  });
}

QaoaRecord make_record(const QaoaResult& r, std::size_t top_k) {
  QaoaRecord rec;
  rec.result = r;
  if (r.histogram.size() <= top_k) return rec;
  std::vector<std::pair<std::string, std::uint64_t>> entries(r.histogram.begin(),
                                                             r.histogram.end());
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  rec.result.histogram.clear();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i < top_k) {
      rec.result.histogram.insert(entries[i]);
    } else {
      ++rec.tail_entries;
      rec.tail_shots += entries[i].second;
    }
  }
  return rec;
}

Json qaoa_to_json(const QaoaRecord& rec) {
  QaoaRecord r = rec;
  if (rec.result.histogram.size() > kHistogramTopK) {
    const QaoaRecord cut = make_record(rec.result);
    r.result.histogram = cut.result.histogram;
    r.tail_entries += cut.tail_entries;
    r.tail_shots += cut.tail_shots;
  }
  const auto& res = r.result;
  Json j;
  j["format"] = kQaoaFormat;
  j["params"] = params_to_json(res.params);
  j["params"].erase("format");
  Json hist = Json::object();
  for (const auto& [bits, c] : res.histogram) hist[bits] = c;
  j["histogram"] = hist;
  j["histogram_tail"] = {
      {"entries", r.tail_entries},
      {"shots", r.tail_shots},
      {"mass", res.shots ? static_cast<double>(r.tail_shots) / static_cast<double>(res.shots)
                         : 0.0}};
  j["success_probability"] = res.success_probability;
  j["exact_success_probability"] = res.exact_success_probability;
  j["expectation"] = res.expectation;
  j["energy_trace"] = res.energy_trace;
  j["seed"] = res.seed;
  j["shots"] = res.shots;
  j["mode"] = r.mode;
  if (r.lambda) j["lambda"] = *r.lambda;
  if (r.std_error) j["std_error"] = *r.std_error;
  if (r.trajectories) j["trajectories"] = *r.trajectories;
  return j;
}

QaoaRecord qaoa_from_json(const Json& j) {
  return guarded("qaoa result", [&] {
    check_format(j, kQaoaFormat);
    QaoaRecord r;
    r.result.params = params_from_json(require(j, "params"));
    for (const auto& [bits, c] : require(j, "histogram").items())
      r.result.histogram[bits] = c.get<std::uint64_t>();
    if (j.contains("histogram_tail")) {
      r.tail_entries = j.at("histogram_tail").value("entries", std::uint64_t{0});
      r.tail_shots = j.at("histogram_tail").value("shots", std::uint64_t{0});
    }
    r.result.success_probability = require(j, "success_probability").get<double>();
    r.result.exact_success_probability = j.value("exact_success_probability", 0.0);
    r.result.expectation = j.value("expectation", 0.0);
    r.result.energy_trace = j.value("energy_trace", std::vector<double>{});
    r.result.seed = require(j, "seed").get<std::uint64_t>();
    r.result.shots = require(j, "shots").get<std::uint64_t>();
    r.mode = j.value("mode", std::string("ideal"));
    if (j.contains("lambda")) r.lambda = j.at("lambda").get<double>();
    if (j.contains("std_error")) r.std_error = j.at("std_error").get<double>();
    if (j.contains("trajectories")) r.trajectories = j.at("trajectories").get<std::uint64_t>();
    return r;
  });
}

Json circuit_to_json(const CompiledCircuit& c) {
  Json j;
  j["format"] = kCircuitFormat;
  j["num_qubits"] = c.num_qubits;
  Json layers = Json::array();
  for (const auto& layer : c.layers) {
    Json l = Json::array();
    for (const auto& g : layer) {
      if (g.kind == Gate::Kind::prx)
        l.push_back({{"gate", "prx"}, {"qubit", g.q0}, {"theta", g.theta}, {"phi", g.phi}});
      else
        l.push_back({{"gate", "cz"}, {"qubits", {g.q0, g.q1}}});
    }
    layers.push_back(l);
  }
  j["layers"] = layers;
  j["measured"] = c.measured;
  j["virtual_z"] = c.virtual_z;
  Json meta{{"cz_count", c.metadata.cz_count},
            {"depth", c.metadata.depth},
            {"zz_depth", c.metadata.zz_depth},
            {"p", c.metadata.p}};
  if (c.metadata.lambda) meta["lambda"] = *c.metadata.lambda;
  j["metadata"] = meta;
  return j;
}

CompiledCircuit circuit_from_json(const Json& j) {
  return guarded("circuit", [&] {
    check_format(j, kCircuitFormat);
    CompiledCircuit c;
    c.num_qubits = require(j, "num_qubits").get<std::size_t>();
    for (const auto& l : require(j, "layers")) {
      Layer layer;
      for (const auto& g : l) {
        const auto kind = require(g, "gate").get<std::string>();
        if (kind == "prx") {
          layer.push_back({Gate::Kind::prx, require(g, "qubit").get<std::size_t>(), 0,
                           require(g, "theta").get<double>(), require(g, "phi").get<double>()});
        } else if (kind == "cz") {
          const auto qs = require(g, "qubits").get<std::vector<std::size_t>>();
          if (qs.size() != 2) throw FormatError("cz needs two qubits");
          layer.push_back({Gate::Kind::cz, qs[0], qs[1], 0.0, 0.0});
        } else {
          throw FormatError("unknown gate \"" + kind + "\"");
        }
      }
      c.layers.push_back(std::move(layer));
    }
    c.measured = require(j, "measured").get<std::vector<std::size_t>>();
    c.virtual_z = j.value("virtual_z", std::vector<double>(c.num_qubits, 0.0));
    const auto& m = require(j, "metadata");
    c.metadata.cz_count = m.value("cz_count", std::size_t{0});
    c.metadata.depth = m.value("depth", std::size_t{0});
    c.metadata.zz_depth = m.value("zz_depth", std::size_t{0});
    c.metadata.p = m.value("p", std::size_t{0});
    if (m.contains("lambda")) c.metadata.lambda = m.at("lambda").get<double>();
    try {
      c.validate();
    } catch (const ValidationError& e) {
      throw FormatError(std::string("invalid circuit: ") + e.what());
    }
    return c;
  });
}

Json coupling_to_json(const CouplingMap& m) {
  Json j;
  j["format"] = kCouplingFormat;
  Json qubits = Json::array();
  for (std::size_t q = 0; q < m.num_qubits; ++q) qubits.push_back(q);
  j["qubits"] = qubits;
  Json edges = Json::array();
  for (const auto& [a, b] : m.edges) edges.push_back({a, b});
  j["edges"] = edges;
  if (m.coords) {
    Json coords = Json::array();
    for (const auto& c : *m.coords) coords.push_back({c[0], c[1]});
    j["coords"] = coords;
  }
  return j;
}

CouplingMap coupling_from_json(const Json& j) {
  return guarded("coupling map", [&] {
    check_format(j, kCouplingFormat);
    CouplingMap m;
    const auto qubits = require(j, "qubits").get<std::vector<std::size_t>>();
    for (std::size_t i = 0; i < qubits.size(); ++i)
      if (qubits[i] != i) throw FormatError("qubit ids must be 0..n-1 in order");
    m.num_qubits = qubits.size();
    for (const auto& e : require(j, "edges")) {
      const auto a = e.at(0).get<std::size_t>();
      const auto b = e.at(1).get<std::size_t>();
      m.edges.push_back(a < b ? Edge{a, b} : Edge{b, a});
    }
    if (j.contains("coords")) {
      std::vector<std::array<int, 2>> coords;
      for (const auto& c : j.at("coords"))
        coords.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
      m.coords = std::move(coords);
    }
    try {
      m.validate();
    } catch (const ValidationError& e) {
      throw FormatError(std::string("invalid coupling map: ") + e.what());
    }
    return m;
  });
}

Json calibration_to_json(const CalibrationData& c) {
  Json j;
  j["format"] = kCalibrationFormat;
  if (!c.label.empty()) j["label"] = c.label;
  Json qubits = Json::object();
  for (const auto& [id, q] : c.qubits)
    qubits[std::to_string(id)] = {{"t1_us", time_to_json(q.t1_us)},
                                  {"t2_us", time_to_json(q.t2_us)},
                                  {"f1q", q.f1q},
                                  {"f_readout", q.f_readout}};
  j["qubits"] = qubits;
  Json couplers = Json::object();
  for (const auto& [e, f] : c.cz_fidelity)
    couplers[std::to_string(e.first) + "-" + std::to_string(e.second)] = {{"f_cz", f}};
  j["couplers"] = couplers;
  j["durations"] = {{"gate_1q_ns", c.gate_1q_ns}, {"cz_ns", c.cz_ns}};
  return j;
}

CalibrationData calibration_from_json(const Json& j) {
  CalibrationData c = guarded("calibration", [&] {
    check_format(j, kCalibrationFormat);
    CalibrationData c;
    c.label = j.value("label", std::string());
    for (const auto& [k, v] : require(j, "qubits").items()) {
      QubitCalibration q;
      q.t1_us = time_from_json(require(v, "t1_us"));
      q.t2_us = time_from_json(require(v, "t2_us"));
      q.f1q = require(v, "f1q").get<double>();
      q.f_readout = require(v, "f_readout").get<double>();
      c.qubits[std::stoul(k)] = q;
    }
    const Json couplers = j.value("couplers", Json::object());
    for (const auto& [k, v] : couplers.items()) {
      const auto dash = k.find('-');
      if (dash == std::string::npos) throw FormatError("coupler key must be \"i-j\"");
      std::size_t a = std::stoul(k.substr(0, dash));
      std::size_t b = std::stoul(k.substr(dash + 1));
      if (a > b) std::swap(a, b);
      c.cz_fidelity[{a, b}] = require(v, "f_cz").get<double>();
    }
    const auto& d = require(j, "durations");
    c.gate_1q_ns = require(d, "gate_1q_ns").get<double>();
    c.cz_ns = require(d, "cz_ns").get<double>();
    return c;
  });
  c.validate();
  return c;
}

Json solution_to_json(const MisSolution& s) {
  Json j;
  j["format"] = kSolutionFormat;
  j["witness"] = s.witness;
  j["size"] = s.size;
  j["circles"] = s.circles;
  j["density"] = s.density;
  if (!s.all_optima.empty()) {
    j["all_optima"] = s.all_optima;
    j["optima_truncated"] = s.optima_truncated;
  }
  return j;
}

std::string format_number(double v, int precision) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "spacing,nodes,edges,mis_size,density,solver,seconds\n";
  for (const auto& r : rows)
    out << format_number(r.spacing) << ',' << r.nodes << ',' << r.edges << ','
        << r.mis_size << ',' << format_number(r.density) << ',' << r.solver << ','
        << format_number(r.seconds, 4) << '\n';
  return out.str();
}

std::string depth_sweep_csv(const std::vector<DepthSweepRow>& rows) {
  std::ostringstream out;
  out << "lambda,p,success_probability,std_error,exact_success_probability,"
         "optimum_modal,expectation\n";
  for (const auto& r : rows)
    out << format_number(r.lambda) << ',' << r.p << ',' << format_number(r.success_probability)
        << ',' << format_number(r.std_error) << ','
        << format_number(r.exact_success_probability) << ',' << (r.optimum_modal ? 1 : 0)
        << ',' << format_number(r.expectation) << '\n';
  return out.str();
}

std::string noisy_sweep_csv(const std::vector<NoisySweepRow>& rows) {
  std::ostringstream out;
  out << "p,success_probability,std_error,ideal_success_probability,cz_count,depth\n";
  for (const auto& r : rows)
    out << r.p << ',' << format_number(r.success_probability) << ','
        << format_number(r.std_error) << ',' << format_number(r.ideal_success_probability)
        << ',' << r.cz_count << ',' << r.depth << '\n';
  return out.str();
}

std::string resources_csv(const std::vector<EmpiricalReport>& rows) {
  std::ostringstream out;
  out << "formulation,q,qubits_bound,cnots_bound,actual_qubits,actual_terms,max_degree,"
         "degree_bound,qubit_slack,term_slack,violated\n";
  for (const auto& r : rows)
    out << to_string(r.formulation) << ',' << r.input.points_per_side << ','
        << format_number(r.qubit_bound) << ',' << format_number(r.term_bound) << ','
        << r.actual_qubits << ',' << r.actual_terms << ',' << r.max_degree << ','
        << format_number(r.degree_bound) << ',' << format_number(r.qubit_slack) << ','
        << format_number(r.term_slack) << ',' << (r.violated ? 1 : 0) << '\n';
  return out.str();
}

}  // namespace qpack
