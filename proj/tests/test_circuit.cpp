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


#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qpack/circuit.hpp"
#include "qpack/error.hpp"
#include "qpack/qaoa.hpp"

using namespace qpack;

namespace {

std::vector<Edge> random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<Edge> e;
  for (auto [a, b] : oracle::random_edges(n, p, rng)) e.push_back({a, b});
  return e;
}

std::size_t max_degree(const std::vector<Edge>& edges) {
  std::map<std::size_t, std::size_t> deg;
  std::size_t m = 0;
  for (auto [a, b] : edges) m = std::max({m, ++deg[a], ++deg[b]});
  return m;
}

struct GarnetFixture {
  PackingGraph g = build_graph(garnet_scenario());
  IsingOperator op = mis_hamiltonian(g, 0.5).first;
  QubitLayout layout = mis_hamiltonian(g, 0.5).second;
  CouplingMap map = garnet_coupling_map();
  Placement placement = placement_by_coordinates(g, layout, map);
};

QaoaParams random_params(std::size_t p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  QaoaParams params;
  for (std::size_t k = 0; k < p; ++k) {
    params.alphas.push_back(u(rng));
    params.betas.push_back(u(rng));
  }
  return params;
}

}  // namespace

TEST_CASE("garnet coupling map") {
  const auto m = garnet_coupling_map();
  CHECK(m.num_qubits == 20);
  CHECK(m.edges.size() == 30);
  CHECK(m.max_degree() == 4);
  REQUIRE(m.coords);
  for (auto [a, b] : m.edges) {
    const auto& ca = (*m.coords)[a];
    const auto& cb = (*m.coords)[b];
    CHECK(std::abs(ca[0] - cb[0]) + std::abs(ca[1] - cb[1]) == 1);
  }
  CHECK_NOTHROW(m.validate());
}

TEST_CASE("edge coloring fixtures") {
  const auto garnet = edge_color(garnet_coupling_map());
  CHECK(garnet.num_colors == 4);
  CHECK(is_proper_coloring(garnet_coupling_map().edges, garnet));

  CHECK(edge_color(std::vector<Edge>{{0, 1}}).num_colors == 1);
  for (std::size_t k : {2, 5, 9}) {
    std::vector<Edge> star;
    for (std::size_t i = 1; i <= k; ++i) star.push_back({0, i});
    CHECK(edge_color(star).num_colors == k);
  }
  // Triangle needs three.
  CHECK(edge_color(std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}}).num_colors == 3);
  CHECK(edge_color(std::vector<Edge>{}).num_colors == 0);
}

TEST_CASE("edge coloring on random graphs") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + rng() % 14;
    auto edges = random_graph(n, 0.2 + 0.05 * (t % 10), rng);
    if (edges.empty()) continue;
    const auto c = edge_color(edges);
    CHECK(is_proper_coloring(edges, c));
    CHECK(c.num_colors >= max_degree(edges));
    CHECK(c.num_colors <= max_degree(edges) + 1);
  }
  // Bipartite graphs are class one.
  for (int t = 0; t < 40; ++t) {
    std::vector<Edge> edges;
    std::bernoulli_distribution coin(0.4);
    for (std::size_t a = 0; a < 7; ++a)
      for (std::size_t b = 7; b < 15; ++b)
        if (coin(rng)) edges.push_back({a, b});
    if (edges.empty()) continue;
    std::shuffle(edges.begin(), edges.end(), rng);
    const auto c = edge_color(edges);
    CHECK(is_proper_coloring(edges, c));
    CHECK(c.num_colors == max_degree(edges));
  }
  // A clash is detected.
  const std::vector<Edge> path{{0, 1}, {1, 2}};
  CHECK_FALSE(is_proper_coloring(path, EdgeColoring{{0, 0}, 1}));
}

TEST_CASE("PRX plus RZ decomposition") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-3.2, 3.2);
  std::vector<Mat2> cases{identity2(), rz_matrix(0.7), rx_matrix(std::numbers::pi),
                          Mat2{0.0, 1.0, 1.0, 0.0}};
  for (int t = 0; t < 200; ++t)
    cases.push_back(mat_mul(rz_matrix(u(rng)), mat_mul(ry_matrix(u(rng)), rz_matrix(u(rng)))));
  for (const auto& m : cases) {
    const auto d = decompose_prx_rz(m);
    const auto back = mat_mul(rz_matrix(d.rz), prx_matrix(d.theta, d.phi));
    // Equal up to a global phase.
    Amplitude phase = 0;
    for (int k = 0; k < 4; ++k) phase += std::conj(back[k]) * m[k];
    phase /= std::abs(phase);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(back[k] * phase - m[k]) < 1e-10);
  }
}

TEST_CASE("ZZ rotation from two CZ") {
  // RY(pi/2) then CZ, RX(2t), CZ, RY(-pi/2) on the target equals
  // exp(-i t Z_a Z_b).
  for (double t : {0.0, 0.3, -1.1, 2.5}) {
    const std::size_t a = 0, b = 1;
    oracle::Matrix u = oracle::embed(ry_matrix(std::numbers::pi / 2), b, 2);
    u = oracle::multiply(oracle::cz(a, b, 2), u);
    u = oracle::multiply(oracle::embed(rx_matrix(2 * t), b, 2), u);
    u = oracle::multiply(oracle::cz(a, b, 2), u);
    u = oracle::multiply(oracle::embed(ry_matrix(-std::numbers::pi / 2), b, 2), u);
    const std::vector<double> zz{1, -1, -1, 1};
    const auto ref = oracle::diagonal_exp(zz, t);
    Amplitude phase = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) phase += std::conj(u[i][j]) * ref[i][j];
    phase /= std::abs(phase);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(std::abs(u[i][j] * phase - ref[i][j]) < 1e-12);
  }
}

TEST_CASE("coordinate placement on garnet") {
  GarnetFixture f;
  REQUIRE(f.placement.size() == 18);
  std::set<std::size_t> used(f.placement.begin(), f.placement.end());
  CHECK(used.size() == 18);
  for (std::size_t k = 0; k < 18; ++k) {
    const auto li = lattice_index(f.g, f.g.nodes[k]);
    const auto& c = (*f.map.coords)[f.placement[k]];
    CHECK(c[0] == li[0]);
    CHECK(c[1] == li[1]);
  }
  for (const auto& e : f.g.edges)
    CHECK(f.map.has_edge(f.placement[f.g.index_of(e.u)], f.placement[f.g.index_of(e.v)]));
}

TEST_CASE("compiled garnet circuits") {
  GarnetFixture f;
  std::mt19937_64 rng(23);
  const std::size_t e = f.op.quadratic.size();
  CHECK(e == f.g.edges.size());
  std::size_t cz1 = 0;
  for (std::size_t p : {1, 3, 5}) {
    const auto params = random_params(p, rng);
    const auto c = compile_qaoa(f.op, x_mixer(18), params, f.map, f.placement);
    CHECK_NOTHROW(c.validate(&f.map));
    CHECK(c.metadata.cz_count == 2 * e * p);
    CHECK(c.metadata.zz_depth == 4);
    CHECK(c.metadata.p == p);
    if (p == 1) cz1 = c.metadata.cz_count;
    if (p == 3) CHECK(c.metadata.cz_count == 3 * cz1);
    std::size_t counted = 0;
    for (const auto& layer : c.layers)
      for (const auto& gate : layer) counted += gate.kind == Gate::Kind::cz;
    CHECK(counted == c.metadata.cz_count);
    const auto rep = verify_circuit(c, f.op, x_mixer(18), params);
    CHECK(rep.max_deviation < 1e-8);
    CHECK(rep.passed);
  }
}

TEST_CASE("compiled circuit against an independent dense simulation") {
  // Small line of three sites on the grid; simulate the gate list densely.
  std::mt19937_64 rng(24);
  const auto g = build_graph(garnet_scenario());
  const auto sub = extract_subgraph(
      g, nodes_at_lattice_indices(
             g, {{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 0}}));
  const auto [op, layout] = mis_hamiltonian(sub, 0.5);
  const auto map = garnet_coupling_map();
  const auto placement = placement_by_coordinates(sub, layout, map);
  const auto params = random_params(2, rng);
  const auto c = compile_qaoa(op, x_mixer(op.num_qubits), params, map, placement);

  // Dense evolution over the measured qubits only; unmeasured qubits see no
  // gates.
  const std::size_t n = c.measured.size();
  std::map<std::size_t, std::size_t> local;
  for (std::size_t k = 0; k < n; ++k) local[c.measured[k]] = k;
  qpack::StateVector psi(std::size_t{1} << n);
  psi[0] = 1.0;
  for (const auto& layer : c.layers)
    for (const auto& gate : layer) {
      if (gate.kind == Gate::Kind::cz)
        psi = oracle::apply(oracle::cz(local.at(gate.q0), local.at(gate.q1), n), psi);
      else
        psi = oracle::apply(oracle::embed(prx_matrix(gate.theta, gate.phi), local.at(gate.q0), n),
                            psi);
    }
  for (std::size_t k = 0; k < n; ++k)
    psi = oracle::apply(oracle::embed(rz_matrix(c.virtual_z[c.measured[k]]), k, n), psi);
  CHECK(deviation_up_to_phase(psi, evolve(op, x_mixer(n), params)) < 1e-10);
}

TEST_CASE("corrupted circuits are flagged") {
  GarnetFixture f;
  std::mt19937_64 rng(25);
  const auto params = random_params(1, rng);
  auto c = compile_qaoa(f.op, x_mixer(18), params, f.map, f.placement);
  for (auto& layer : c.layers)
    for (auto& gate : layer)
      if (gate.kind == Gate::Kind::prx) {
        gate.theta += 0.05;
        goto done;
      }
done:
  CHECK_FALSE(verify_circuit(c, f.op, x_mixer(18), params).passed);
}

TEST_CASE("edge cases of compilation") {
  const auto map = garnet_coupling_map();
  // No couplings: single-qubit gates only.
  IsingOperator lin;
  lin.num_qubits = 3;
  lin.add_z_product({0}, 0.4);
  lin.add_z_product({2}, -0.2);
  const Placement line{0, 1, 2};
  const QaoaParams params{{0.3, 0.4}, {0.5, 0.6}};
  const auto c = compile_qaoa(lin, x_mixer(3), params, map, line);
  CHECK(c.metadata.cz_count == 0);
  CHECK(verify_circuit(c, lin, x_mixer(3), params).passed);

  // p = 0 prepares |+>^n.
  const auto zero = compile_qaoa(lin, x_mixer(3), QaoaParams{}, map, line);
  const auto rep = verify_circuit(zero, lin, x_mixer(3), QaoaParams{});
  CHECK(rep.passed);
  CHECK(deviation_up_to_phase(simulate_circuit(zero), plus_state(3)) < 1e-12);

  // ZZ off the couplers.
  IsingOperator far = lin;
  far.add_z_product({0, 2}, 1.0);
  CHECK_THROWS_AS(compile_qaoa(far, x_mixer(3), params, map, Placement{0, 1, 19}), LayoutError);
  // Cubic terms are not lowered.
  IsingOperator cubic = lin;
  cubic.add_z_product({0, 1, 2}, 1.0);
  CHECK_THROWS_AS(compile_qaoa(cubic, x_mixer(3), params, map, line), InvalidArgument);
}

TEST_CASE("circuit validation") {
  const auto map = garnet_coupling_map();
  CompiledCircuit c;
  c.num_qubits = 20;
  c.measured = {0, 1};
  c.virtual_z.assign(20, 0.0);
  c.layers = {{Gate{Gate::Kind::prx, 0, 0, 1.0, 0.0}, Gate{Gate::Kind::prx, 0, 0, 1.0, 0.0}}};
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c.layers = {{Gate{Gate::Kind::cz, 0, 19, 0.0, 0.0}}};
  CHECK_NOTHROW(c.validate());
  CHECK_THROWS_AS(c.validate(&map), ValidationError);

  CouplingMap bad;
  bad.num_qubits = 2;
  bad.edges = {{0, 0}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}
