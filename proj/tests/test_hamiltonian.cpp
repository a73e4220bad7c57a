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
#include "qpack/error.hpp"
#include "qpack/hamiltonian.hpp"

using namespace qpack;

namespace {

// Direct evaluation of sum (1 - x_v) + lambda sum_E x_v x_w.
double mis_objective(const PackingGraph& g, double lambda, const std::string& bits) {
  double e = 0;
  for (std::size_t k = 0; k < g.size(); ++k) e += bits[k] == '1' ? 0.0 : 1.0;
  for (const auto& edge : g.edges)
    if (bits[g.index_of(edge.u)] == '1' && bits[g.index_of(edge.v)] == '1') e += lambda;
  return e;
}

PackingScenario two_radius_scenario(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PackingScenario s;
  s.dimension = 2;
  s.boundary_radius = 2.0 + 1.5 * u(rng);
  s.radii = {0.5 + 0.5 * u(rng), 0.25 + 0.2 * u(rng)};
  s.spacing = 0.9 + 0.8 * u(rng);
  return s;
}

}  // namespace

TEST_CASE("two-node MIS operator by hand") {
  const auto g = oracle::abstract_graph(2, {{0, 1}});
  const auto [op, layout] = mis_hamiltonian(g, 2.0);
  CHECK(classical_energy(op, "00") == doctest::Approx(2.0));
  CHECK(classical_energy(op, "01") == doctest::Approx(1.0));
  CHECK(classical_energy(op, "10") == doctest::Approx(1.0));
  CHECK(classical_energy(op, "11") == doctest::Approx(2.0));
  const auto d = diagonal(op);
  CHECK(d[bits_to_index("01")] == doctest::Approx(1.0));
  CHECK(layout.formulation == Formulation::mis);
}

TEST_CASE("single-node MIS operator") {
  const auto g = oracle::abstract_graph(1, {});
  const auto [op, layout] = mis_hamiltonian(g, 2.0);
  CHECK(op.constant == doctest::Approx(0.5));
  CHECK(op.linear.at(0) == doctest::Approx(0.5));
  CHECK(classical_energy(op, "0") == doctest::Approx(1.0));
  CHECK(classical_energy(op, "1") == doctest::Approx(0.0));
}

TEST_CASE("MIS operator against direct objective") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng() % 9;
    const auto g = oracle::abstract_graph(n, oracle::random_edges(n, 0.4, rng));
    const double lambda = 0.25 + (rng() % 8) * 0.25;
    const auto [op, layout] = mis_hamiltonian(g, lambda);
    const auto d = diagonal(op);
    CHECK(d[0] == doctest::Approx(static_cast<double>(n)));
    for (std::uint64_t x = 0; x < d.size(); ++x) {
      const auto bits = index_to_bits(x, n);
      CHECK(d[x] == doctest::Approx(mis_objective(g, lambda, bits)));
      CHECK(classical_energy(op, x) == doctest::Approx(d[x]));
    }
  }
}

TEST_CASE("bit convention") {
  CHECK(index_to_bits(1, 3) == "100");
  CHECK(index_to_bits(6, 3) == "011");
  CHECK(bits_to_index("011") == 6);
  IsingOperator op;
  op.num_qubits = 3;
  op.add_z_product({2}, 1.0);
  // Qubit 2 set in index 4: Z eigenvalue -1.
  CHECK(classical_energy(op, std::uint64_t{4}) == doctest::Approx(-1.0));
  CHECK(classical_energy(op, "001") == doctest::Approx(-1.0));
}

TEST_CASE("Z products cancel and vanish") {
  IsingOperator op;
  op.num_qubits = 4;
  op.add_z_product({1, 1}, 2.0);  // Z^2 = I
  CHECK(op.constant == doctest::Approx(2.0));
  op.add_z_product({0, 2}, 1.0);
  op.add_z_product({2, 0}, -1.0);
  CHECK(op.quadratic.empty());
  op.add_z_product({3, 1, 0}, 0.5);
  CHECK(op.higher.count({0, 1, 3}));
  CHECK(op.degree() == 3);
}

TEST_CASE("projector expansion matches direct evaluation") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    IsingOperator op;
    op.num_qubits = 5;
    for (int k = 0; k < 4; ++k) {
      Projector p;
      const std::size_t m = 1 + rng() % 3;
      std::vector<std::size_t> qs{0, 1, 2, 3, 4};
      std::shuffle(qs.begin(), qs.end(), rng);
      for (std::size_t i = 0; i < m; ++i) {
        p.qubits.push_back(qs[i]);
        p.bits.push_back(rng() & 1);
      }
      p.weight = static_cast<double>(rng() % 7) - 3.0;
      op.add_projector(p);
    }
    const auto expanded = expand_projectors(op);
    CHECK_FALSE(expanded.has_projectors());
    const auto a = diagonal(op);
    const auto b = diagonal(expanded);
    for (std::size_t x = 0; x < a.size(); ++x) {
      double direct = 0;
      for (const auto& p : op.projectors) {
        bool hit = true;
        for (std::size_t i = 0; i < p.qubits.size(); ++i)
          hit = hit && ((x >> p.qubits[i]) & 1) == p.bits[i];
        direct += hit ? p.weight : 0.0;
      }
      CHECK(a[x] == doctest::Approx(direct));
      CHECK(b[x] == doctest::Approx(direct));
    }
  }
}

TEST_CASE("second quantization single placement") {
  PackingScenario s;
  s.dimension = 2;
  s.boundary_radius = 1.5;
  s.radii = {1.0};
  s.spacing = 5.0;
  const auto g = build_graph(s);
  const auto [op, layout] = second_quantization_hamiltonian(g, 2.0, default_volume_weights(s));
  CHECK(classical_energy(op, "1") == doctest::Approx(-std::numbers::pi));
  CHECK(classical_energy(op, "0") == doctest::Approx(0.0));
}

TEST_CASE("second quantization against direct objective") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    auto s = two_radius_scenario(rng);
    auto g = build_graph(s);
    if (g.size() > 12) {
      std::set<std::size_t> keep;
      for (std::size_t k = 0; k < 12; ++k) keep.insert(g.nodes[k].id);
      g = extract_subgraph(g, keep);
    }
    const auto w = default_volume_weights(s);
    const auto [op, layout] = second_quantization_hamiltonian(g, 3.0, w);
    CHECK(op.degree() <= 2);
    const auto d = diagonal(op);
    for (std::uint64_t x = 0; x < d.size(); ++x) {
      const auto bits = index_to_bits(x, g.size());
      double e = 0;
      for (std::size_t k = 0; k < g.size(); ++k)
        if (bits[k] == '1') e -= w(g.nodes[k].radius_index);
      for (const auto& edge : g.edges)
        if (bits[g.index_of(edge.u)] == '1' && bits[g.index_of(edge.v)] == '1') e += 3.0;
      CHECK(d[x] == doctest::Approx(e));
    }
  }
}

TEST_CASE("first quantization against direct objective") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    auto s = two_radius_scenario(rng);
    auto g = build_graph(s);
    // Keep whole sites: at most 8 nodes, taken in coordinate order.
    if (g.size() > 8) {
      std::set<std::size_t> keep;
      for (std::size_t k = 0; k < 8; ++k) keep.insert(g.nodes[k].id);
      g = extract_subgraph(g, keep);
    }
    const auto w = default_volume_weights(s);
    FirstQuantizationOptions opt;
    opt.lambda = 2.5;
    opt.invalid_penalty = 7.0;
    const auto [op, layout] = first_quantization_hamiltonian(g, w, opt);
    CHECK(layout.register_width == 2);
    CHECK(layout.num_qubits() == 2 * layout.sites.size());

    const auto d = diagonal(op);
    for (std::uint64_t x = 0; x < d.size(); ++x) {
      const auto bits = index_to_bits(x, layout.num_qubits());
      std::vector<std::size_t> code(layout.sites.size());
      double e = 0;
      for (std::size_t si = 0; si < layout.sites.size(); ++si) {
        const auto& site = layout.sites[si];
        for (std::size_t k = 0; k < site.qubits.size(); ++k)
          code[si] |= std::size_t{bits[site.qubits[k]] == '1'} << k;
        if (code[si] == 0) continue;
        const auto it = site.codeword_node.find(code[si]);
        e += it == site.codeword_node.end() ? 7.0 : -w(code[si] - 1);
      }
      const auto occupied = layout.decode(bits);
      const std::set<std::size_t> occ(occupied.begin(), occupied.end());
      for (const auto& edge : g.edges)
        if (occ.count(edge.u) && occ.count(edge.v)) e += 2.5;
      CHECK(d[x] == doctest::Approx(e));
    }

    // Unexpanded projectors evaluate the same.
    opt.keep_projectors = true;
    const auto kept = first_quantization_hamiltonian(g, w, opt).first;
    const auto dk = diagonal(kept);
    for (std::size_t x = 0; x < d.size(); ++x) CHECK(dk[x] == doctest::Approx(d[x]));
  }
}

TEST_CASE("register width") {
  CHECK(register_width(1) == 1);
  CHECK(register_width(2) == 2);
  CHECK(register_width(3) == 2);
  CHECK(register_width(4) == 3);
  CHECK(register_width(7) == 3);
  CHECK(register_width(8) == 4);
}

TEST_CASE("layout encode and decode") {
  std::mt19937_64 rng(4);
  auto s = two_radius_scenario(rng);
  const auto g = build_graph(s);
  const auto w = default_volume_weights(s);
  for (auto f : {Formulation::first_quantization, Formulation::second_quantization}) {
    const auto layout = f == Formulation::first_quantization
                            ? first_quantization_hamiltonian(g, w).second
                            : second_quantization_hamiltonian(g, 2.0, w).second;
    layout.validate();
    std::vector<std::size_t> pick{g.nodes.front().id, g.nodes.back().id};
    CHECK(layout.decode(layout.encode(pick)) == pick);
    CHECK(layout.decode(std::string(layout.num_qubits(), '0')).empty());
  }
}

TEST_CASE("X mixer and formulation names") {
  CHECK(x_mixer(1).num_qubits == 1);
  CHECK(x_mixer(18).num_qubits == 18);
  CHECK(x_mixer(18).coefficient == -1.0);
  for (auto f : {Formulation::mis, Formulation::first_quantization,
                 Formulation::second_quantization})
    CHECK(formulation_from_string(to_string(f)) == f);
  CHECK_THROWS_AS(formulation_from_string("third"), InvalidArgument);
}

TEST_CASE("bad lambda rejected") {
  const auto g = oracle::abstract_graph(2, {{0, 1}});
  CHECK_THROWS_AS(mis_hamiltonian(g, 0.0), InvalidArgument);
  CHECK_THROWS_AS(mis_hamiltonian(g, -1.0), InvalidArgument);
}
