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

#include "qpack/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <set>
#include <string>

#include "qpack/error.hpp"

namespace qpack {

namespace {

constexpr long kNone = -1;
constexpr double kAngleEps = 1e-12;

Edge ordered(std::size_t a, std::size_t b) { return a < b ? Edge{a, b} : Edge{b, a}; }

std::size_t node_count(const std::vector<Edge>& edges) {
  std::size_t n = 0;
  for (const auto& [a, b] : edges) n = std::max({n, a + 1, b + 1});
  return n;
}

std::size_t degree_bound(const std::vector<Edge>& edges, std::size_t n) {
  std::vector<std::size_t> deg(n, 0);
  for (const auto& [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

bool is_bipartite(const std::vector<Edge>& edges, std::size_t n) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> side(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto v : adj[u]) {
        if (side[v] < 0) {
          side[v] = 1 - side[u];
          queue.push_back(v);
        } else if (side[v] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

// at[v][c] = neighbor joined to v by the edge of color c, or kNone.
struct ColorTable {
  std::vector<std::vector<long>> at;

  ColorTable(std::size_t n, std::size_t colors) : at(n, std::vector<long>(colors, kNone)) {}

  bool free(std::size_t v, std::size_t c) const { return at[v][c] == kNone; }
  std::size_t first_free(std::size_t v) const {
    for (std::size_t c = 0; c < at[v].size(); ++c)
      if (free(v, c)) return c;
    throw Error("edge coloring ran out of colors");
  }
  void set(std::size_t u, std::size_t v, std::size_t c) {
    at[u][c] = static_cast<long>(v);
    at[v][c] = static_cast<long>(u);
  }
  void clear(std::size_t u, std::size_t v, std::size_t c) {
    at[u][c] = kNone;
    at[v][c] = kNone;
  }
  long color_of(std::size_t u, std::size_t v) const {
    for (std::size_t c = 0; c < at[u].size(); ++c)
      if (at[u][c] == static_cast<long>(v)) return static_cast<long>(c);
    return kNone;
  }
  // Swaps colors a and b along the alternating path leaving v on color a.
  void flip_path(std::size_t v, std::size_t a, std::size_t b) {
    std::vector<std::pair<Edge, std::size_t>> path;
    std::size_t cur = v;
    std::size_t want = a;
    while (at[cur][want] != kNone) {
      const auto next = static_cast<std::size_t>(at[cur][want]);
      path.push_back({{cur, next}, want});
      cur = next;
      want = want == a ? b : a;
    }
    for (const auto& [e, c] : path) clear(e.first, e.second, c);
    for (const auto& [e, c] : path) set(e.first, e.second, c == a ? b : a);
  }
};

EdgeColoring finish(const std::vector<Edge>& edges, const ColorTable& table) {
  EdgeColoring out;
  std::map<std::size_t, std::size_t> renumber;  // first-use order
  for (const auto& [u, v] : edges) {
    const auto c = static_cast<std::size_t>(table.color_of(u, v));
    auto it = renumber.try_emplace(c, renumber.size()).first;
    out.colors.push_back(it->second);
  }
  out.num_colors = renumber.size();
  return out;
}

EdgeColoring color_bipartite(const std::vector<Edge>& edges, std::size_t n,
                             std::size_t delta) {
  ColorTable table(n, delta);
  for (const auto& [u, v] : edges) {
    const std::size_t a = table.first_free(u);
    const std::size_t b = table.first_free(v);
    // With u missing a and v missing b, the path from v alternating a/b
    // cannot end at u in a bipartite graph.
    if (!table.free(v, a)) table.flip_path(v, a, b);
    table.set(u, v, a);
  }
  return finish(edges, table);
}

EdgeColoring color_misra_gries(const std::vector<Edge>& edges, std::size_t n,
                               std::size_t delta) {
  ColorTable table(n, delta + 1);
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (const auto& [x, f] : edges) {
    // Maximal fan of x starting at f.
    std::vector<std::size_t> fan{f};
    std::vector<bool> in_fan(n, false);
    in_fan[f] = true;
    for (bool grown = true; grown;) {
      grown = false;
      for (auto u : adj[x]) {
        if (in_fan[u]) continue;
        const long c = table.color_of(x, u);
        if (c != kNone && table.free(fan.back(), static_cast<std::size_t>(c))) {
          fan.push_back(u);
          in_fan[u] = true;
          grown = true;
          break;
        }
      }
    }
    const std::size_t c = table.first_free(x);
    const std::size_t d = table.first_free(fan.back());
    if (c != d) table.flip_path(x, d, c);

    std::size_t w = fan.size() - 1;
    for (std::size_t i = 0; i < fan.size(); ++i) {
      if (i > 0) {
        const long ci = table.color_of(x, fan[i]);
        if (ci == kNone || !table.free(fan[i - 1], static_cast<std::size_t>(ci))) break;
      }
      if (table.free(fan[i], d)) {
        w = i;
        break;
      }
    }
    // Rotate the fan prefix fan[0..w].
    for (std::size_t i = 0; i < w; ++i) {
      const auto ci = static_cast<std::size_t>(table.color_of(x, fan[i + 1]));
      table.clear(x, fan[i + 1], ci);
      table.set(x, fan[i], ci);
    }
    table.set(x, fan[w], d);
  }
  return finish(edges, table);
}

}  // namespace

bool CouplingMap::has_edge(std::size_t a, std::size_t b) const {
  const Edge e = ordered(a, b);
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

std::size_t CouplingMap::max_degree() const { return degree_bound(edges, num_qubits); }

void CouplingMap::validate() const {
  std::set<Edge> seen;
  for (const auto& [a, b] : edges) {
    if (a == b) throw ValidationError("edges", "self loop on qubit " + std::to_string(a));
    if (a >= num_qubits || b >= num_qubits)
      throw ValidationError("edges", "edge endpoint outside the register");
    if (!seen.insert(ordered(a, b)).second)
      throw ValidationError("edges", "duplicate coupler");
  }
  if (coords && coords->size() != num_qubits)
    throw ValidationError("coords", "one coordinate per qubit required");
}

CouplingMap garnet_coupling_map() {
  CouplingMap map;
  std::vector<std::array<int, 2>> coords;
  for (int j = -2; j <= 2; ++j)
    for (int i = -2; i <= 2; ++i) {
      if (std::abs(i) == 2 && std::abs(j) == 2) continue;
      if (i == kGarnetFixedSite[0] && j == kGarnetFixedSite[1]) continue;
      coords.push_back({i, j});
    }
  map.num_qubits = coords.size();
  for (std::size_t a = 0; a < coords.size(); ++a)
    for (std::size_t b = a + 1; b < coords.size(); ++b)
      if (std::abs(coords[a][0] - coords[b][0]) + std::abs(coords[a][1] - coords[b][1]) == 1)
        map.edges.push_back({a, b});
  map.coords = std::move(coords);
  return map;
}

EdgeColoring edge_color(const std::vector<Edge>& edges) {
  if (edges.empty()) return {};
  std::set<Edge> seen;
  for (const auto& [a, b] : edges)
    if (a == b || !seen.insert(ordered(a, b)).second)
      throw InvalidArgument("edge_color: graph must be simple");
  const std::size_t n = node_count(edges);
  const std::size_t delta = degree_bound(edges, n);
  return is_bipartite(edges, n) ? color_bipartite(edges, n, delta)
                                : color_misra_gries(edges, n, delta);
}

EdgeColoring edge_color(const CouplingMap& map) { return edge_color(map.edges); }

bool is_proper_coloring(const std::vector<Edge>& edges, const EdgeColoring& c) {
  if (c.colors.size() != edges.size()) return false;
  std::set<std::pair<std::size_t, std::size_t>> used;  // (node, color)
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (c.colors[k] >= c.num_colors) return false;
    if (!used.insert({edges[k].first, c.colors[k]}).second) return false;
    if (!used.insert({edges[k].second, c.colors[k]}).second) return false;
  }
  return true;
}

void CompiledCircuit::validate(const CouplingMap* map) const {
  for (std::size_t l = 0; l < layers.size(); ++l) {
    std::set<std::size_t> used;
    for (const auto& g : layers[l]) {
      auto touch = [&](std::size_t q) {
        if (q >= num_qubits) throw ValidationError("layers", "gate on unknown qubit");
        if (!used.insert(q).second)
          throw ValidationError("layers", "qubit " + std::to_string(q) +
                                              " used twice in layer " + std::to_string(l));
      };
      touch(g.q0);
      if (g.kind == Gate::Kind::cz) {
        touch(g.q1);
        if (map && !map->has_edge(g.q0, g.q1))
          throw ValidationError("layers", "CZ off the coupling map");
      }
    }
  }
  if (virtual_z.size() != num_qubits)
    throw ValidationError("virtual_z", "one frame entry per qubit required");
  for (auto q : measured)
    if (q >= num_qubits) throw ValidationError("measured", "unknown qubit");
}

Placement placement_by_coordinates(const PackingGraph& g, const QubitLayout& layout,
                                   const CouplingMap& map) {
  if (!map.coords) throw LayoutError("coupling map has no coordinates");
  if (layout.formulation == Formulation::first_quantization)
    throw LayoutError("coordinate placement needs one qubit per placement");
  std::map<std::array<int, 2>, std::size_t> by_coord;
  for (std::size_t q = 0; q < map.num_qubits; ++q) by_coord[(*map.coords)[q]] = q;
  Placement placement;
  std::set<std::size_t> taken;
  for (std::size_t q = 0; q < layout.num_qubits(); ++q) {
    const auto idx = lattice_index(g, g.node(layout.slots[q].node_id));
    const std::array<int, 2> key{idx[0], idx[1]};
    auto it = by_coord.find(key);
    if (it == by_coord.end() || !taken.insert(it->second).second)
      throw LayoutError("no free physical qubit at lattice index (" +
                        std::to_string(key[0]) + ", " + std::to_string(key[1]) + ")");
    placement.push_back(it->second);
  }
  return placement;
}

PrxRz decompose_prx_rz(const Mat2& u) {
  // Remove the global phase so that u is in SU(2): [[x, -conj(y)], [y, conj(x)]].
  const Amplitude det = u[0] * u[3] - u[1] * u[2];
  const Amplitude root = std::sqrt(det);
  const Amplitude x = u[0] / root;
  const Amplitude y = u[2] / root;
  // RZ(a) PRX(theta, phi) has x = e^{-ia/2} cos(theta/2) and
  // y = -i e^{i(phi + a/2)} sin(theta/2).
  PrxRz out;
  out.theta = 2.0 * std::atan2(std::abs(y), std::abs(x));
  out.rz = std::abs(x) > kAngleEps ? -2.0 * std::arg(x) : 0.0;
  out.phi = std::abs(y) > kAngleEps
                ? std::arg(y) + std::numbers::pi / 2.0 - out.rz / 2.0
                : 0.0;
  return out;
}

namespace {

class Emitter {
 public:
  Emitter(std::size_t num_physical, const Placement& placement)
      : placement_(placement), pending_(placement.size(), identity2()) {
    circuit_.num_qubits = num_physical;
  }

  // Left-multiplies a gate onto logical qubit q's pending unitary.
  void push(std::size_t q, const Mat2& m) { pending_[q] = mat_mul(m, pending_[q]); }

  // Emits the non-diagonal part of each listed qubit's pending unitary as a
  // PRX; the leftover Z rotation stays pending.
  void flush(const std::vector<std::size_t>& qubits) {
    Layer layer;
    for (auto q : qubits) {
      const PrxRz d = decompose_prx_rz(pending_[q]);
      if (std::abs(d.theta) > kAngleEps)
        layer.push_back({Gate::Kind::prx, placement_[q], 0, d.theta, d.phi});
      pending_[q] = rz_matrix(d.rz);
    }
    if (!layer.empty()) circuit_.layers.push_back(std::move(layer));
  }

  void cz_round(const std::vector<Edge>& pairs) {
    Layer layer;
    for (const auto& [a, b] : pairs)
      layer.push_back({Gate::Kind::cz, placement_[a], placement_[b], 0.0, 0.0});
    if (!layer.empty()) circuit_.layers.push_back(std::move(layer));
    circuit_.metadata.cz_count += pairs.size();
  }

  CompiledCircuit finish() {
    std::vector<std::size_t> all(pending_.size());
    for (std::size_t q = 0; q < all.size(); ++q) all[q] = q;
    flush(all);
    circuit_.virtual_z.assign(circuit_.num_qubits, 0.0);
    for (std::size_t q = 0; q < pending_.size(); ++q) {
      // pending is now diagonal: RZ(a) up to phase.
      circuit_.virtual_z[placement_[q]] = decompose_prx_rz(pending_[q]).rz;
    }
    circuit_.measured = placement_;
    circuit_.metadata.depth = circuit_.layers.size();
    return std::move(circuit_);
  }

 private:
  const Placement& placement_;
  std::vector<Mat2> pending_;
  CompiledCircuit circuit_;
};

}  // namespace

CompiledCircuit compile_qaoa(const IsingOperator& op, const XMixer& mixer,
                             const QaoaParams& params, const CouplingMap& map,
                             const Placement& placement) {
  map.validate();
  if (!(params.alphas.empty() && params.betas.empty())) params.validate();
  if (op.has_projectors() || !op.higher.empty())
    throw InvalidArgument("compile_qaoa supports one- and two-body Z terms only");
  if (mixer.num_qubits != op.num_qubits)
    throw InvalidArgument("mixer and cost operator act on different registers");
  if (placement.size() != op.num_qubits)
    throw LayoutError("placement must map every logical qubit");
  std::set<std::size_t> phys;
  for (auto q : placement)
    if (q >= map.num_qubits || !phys.insert(q).second)
      throw LayoutError("placement uses an unknown or repeated physical qubit");

  std::vector<Edge> zz;
  std::vector<double> weights;
  for (const auto& [e, w] : op.quadratic) {
    if (!map.has_edge(placement[e.first], placement[e.second]))
      throw LayoutError("ZZ term on qubits (" + std::to_string(e.first) + ", " +
                        std::to_string(e.second) + ") has no coupler under the placement");
    zz.push_back(e);
    weights.push_back(w);
  }
  const EdgeColoring coloring = edge_color(zz);
  std::vector<std::vector<std::size_t>> rounds(coloring.num_colors);
  for (std::size_t k = 0; k < zz.size(); ++k) rounds[coloring.colors[k]].push_back(k);

  Emitter em(map.num_qubits, placement);
  for (std::size_t q = 0; q < op.num_qubits; ++q) em.push(q, ry_matrix(std::numbers::pi / 2.0));

  for (std::size_t layer = 0; layer < params.layers(); ++layer) {
    const double alpha = params.alphas[layer];
    for (const auto& [q, h] : op.linear) em.push(q, rz_matrix(2.0 * alpha * h));
    // exp(-i alpha J Z_a Z_b) = RY_b(-pi/2) CZ RX_b(2 alpha J) CZ RY_b(pi/2).
    for (const auto& round : rounds) {
      std::vector<std::size_t> touched;
      std::vector<Edge> pairs;
      for (auto k : round) {
        const auto [a, b] = zz[k];
        em.push(b, ry_matrix(std::numbers::pi / 2.0));
        touched.push_back(a);
        touched.push_back(b);
        pairs.push_back(zz[k]);
      }
      std::sort(touched.begin(), touched.end());
      em.flush(touched);
      em.cz_round(pairs);
      std::vector<std::size_t> targets;
      for (auto k : round) {
        em.push(zz[k].second, rx_matrix(2.0 * alpha * weights[k]));
        targets.push_back(zz[k].second);
      }
      std::sort(targets.begin(), targets.end());
      em.flush(targets);
      em.cz_round(pairs);
      for (auto k : round) em.push(zz[k].second, ry_matrix(-std::numbers::pi / 2.0));
    }
    const Mat2 mix = rx_matrix(2.0 * params.betas[layer] * mixer.coefficient);
    for (std::size_t q = 0; q < op.num_qubits; ++q) em.push(q, mix);
  }
  CompiledCircuit circuit = em.finish();
  circuit.metadata.p = params.layers();
  circuit.metadata.zz_depth = coloring.num_colors;
  circuit.validate(&map);
  return circuit;
}

StateVector simulate_circuit(const CompiledCircuit& circuit, std::size_t max_qubits) {
  const std::size_t n = circuit.measured.size();
  check_qubit_cap(n, max_qubits);
  std::vector<long> logical(circuit.num_qubits, kNone);
  for (std::size_t k = 0; k < n; ++k) logical[circuit.measured[k]] = static_cast<long>(k);
  auto local = [&](std::size_t q) {
    if (q >= logical.size() || logical[q] == kNone)
      throw InvalidArgument("circuit acts on an unmeasured qubit");
    return static_cast<std::size_t>(logical[q]);
  };
  StateVector psi = zero_state(n);
  for (const auto& layer : circuit.layers)
    for (const auto& g : layer) {
      if (g.kind == Gate::Kind::prx)
        apply_1q(psi, local(g.q0), prx_matrix(g.theta, g.phi));
      else
        apply_cz(psi, local(g.q0), local(g.q1));
    }
  for (std::size_t k = 0; k < n; ++k) {
    const double a = circuit.virtual_z.empty() ? 0.0 : circuit.virtual_z[circuit.measured[k]];
    if (a != 0.0) apply_1q(psi, k, rz_matrix(a));
  }
  return psi;
}

VerifyReport verify_circuit(const CompiledCircuit& circuit, const IsingOperator& op,
                            const XMixer& mixer, const QaoaParams& params) {
  VerifyReport report;
  const StateVector expected = params.layers() == 0 && params.betas.empty()
                                   ? plus_state(op.num_qubits)
                                   : evolve(op, mixer, params);
  const StateVector actual = simulate_circuit(circuit);
  if (actual.size() != expected.size())
    throw InvalidArgument("verify_circuit: circuit and operator sizes differ");
  report.max_deviation = deviation_up_to_phase(actual, expected);
  report.cz_count = circuit.metadata.cz_count;
  report.expected_cz_count = 2 * op.quadratic.size() * params.layers();
  report.passed = report.max_deviation < kVerifyTolerance &&
                  report.cz_count == report.expected_cz_count;
  return report;
}

}  // namespace qpack
