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

#include "doctest.h"
#include "qpack/circuit.hpp"
#include "qpack/error.hpp"
#include "qpack/resources.hpp"
#include "resource_scenarios.hpp"

using namespace qpack;

TEST_CASE("second quantization bounds by hand") {
  const auto b = second_quant_bounds({2, 8, 2, 1.0, 4.0});
  CHECK(b.qubits.ceiling == 128);
  CHECK(b.cnots.ceiling == 512);
  CHECK(b.cnots.value == doctest::Approx(2 * std::pow(64.0 / 4.0, 2)));
  CHECK(second_quant_bounds({1, 1, 2, 1.0, 1.0}).qubits.ceiling == 1);
  const auto c = second_quant_bounds({3, 10, 3, 0.3, 1.0});
  CHECK(c.cnots.ceiling == 81000);
}

TEST_CASE("first quantization bounds by hand") {
  const auto b = first_quant_bounds({3, 8, 2, 1.0, 4.0});
  CHECK(b.register_width == 2);
  CHECK(b.qubits.ceiling == 128);
  CHECK(b.cnots.ceiling == 192);
  CHECK(b.cnots_approx == doctest::Approx(27 * 4.0));
  CHECK(b.qubits_approx == doctest::Approx(std::log2(3.0) * 64));
  const auto one = first_quant_bounds({1, 1, 2, 1.0, 1.0});
  CHECK(one.register_width == 1);
  CHECK(one.qubits.ceiling == 1);
}

TEST_CASE("ceilings snap near integers") {
  // 3 * (0.3 * 100)^3 is 81000 up to rounding.
  const auto c = second_quant_bounds({3, 10, 3, 0.3, 1.0});
  CHECK(std::abs(c.cnots.value - 81000) < 1e-6);
  CHECK(second_quant_bounds({1, 3, 2, 1.0, 2.0}).cnots.ceiling == 21);  // 20.25
}

TEST_CASE("scaling input validation") {
  CHECK_THROWS_AS(second_quant_bounds({1, 8, 4, 1.0, 4.0}), ValidationError);
  CHECK_THROWS_AS(second_quant_bounds({0, 8, 2, 1.0, 4.0}), ValidationError);
  CHECK_THROWS_AS(first_quant_bounds({1, 8, 2, 5.0, 4.0}), ValidationError);
}

TEST_CASE("points per side") {
  const auto s = garnet_scenario();
  CHECK(points_per_side(s) == 5);
  const auto in = scaling_input(s);
  CHECK(in.num_radii == 1);
  CHECK(in.max_radius == 1.0);
  CHECK(in.boundary_radius == 4.2);
  PackingScenario cyl;
  cyl.dimension = 3;
  cyl.boundary_radius = 2.0;
  cyl.cylinder_height = 9.0;
  cyl.radii = {1.0};
  cyl.spacing = 1.0;
  CHECK(points_per_side(cyl) == 10);
}

TEST_CASE("garnet instance against the bounds") {
  const auto r = empirical_vs_bound(garnet_scenario(), Formulation::second_quantization);
  CHECK(r.actual_qubits == 18);
  CHECK(r.qubit_bound == doctest::Approx(25));
  CHECK(r.actual_terms == build_graph(garnet_scenario()).edges.size());
  CHECK_FALSE(r.violated);
  CHECK(r.qubit_slack == doctest::Approx(25.0 / 18.0));
  // Compiled CZ count per layer, halved, equals the ZZ term count.
  const auto g = build_graph(garnet_scenario());
  const auto [op, layout] = mis_hamiltonian(g, 2.0);
  const auto map = garnet_coupling_map();
  const auto c = compile_qaoa(op, x_mixer(18), {{0.1, 0.2}, {0.3, 0.4}}, map,
                              placement_by_coordinates(g, layout, map));
  CHECK(c.metadata.cz_count / 2 / 2 == r.actual_terms);
  CHECK(static_cast<double>(r.actual_terms) <= r.term_bound);
}

TEST_CASE("tiny radii give no terms") {
  PackingScenario s;
  s.dimension = 2;
  s.boundary_radius = 4.0;
  s.radii = {0.01};
  s.spacing = 1.0;
  for (auto f : {Formulation::second_quantization, Formulation::first_quantization}) {
    const auto r = empirical_vs_bound(s, f);
    CHECK(r.actual_terms == 0);
    CHECK(std::isinf(r.term_slack));
    CHECK_FALSE(r.violated);
  }
}

TEST_CASE("dense single-radius lattice keeps slack") {
  PackingScenario s;
  s.dimension = 2;
  s.boundary_radius = 4.0;
  s.radii = {1.5};
  s.spacing = 0.3;
  const auto r = empirical_vs_bound(s, Formulation::second_quantization);
  CHECK_FALSE(r.violated);
  CHECK(r.term_slack > 1.0);
  CHECK(r.degree_ratio > 1.0);  // the per-node degree estimate is not a bound
}

TEST_CASE("bounded sweep has no violations") {
  for (const auto& s : resource_scenarios::sweep()) {
    for (auto f : {Formulation::second_quantization, Formulation::first_quantization}) {
      const auto r = empirical_vs_bound(s, f);
      CAPTURE(s.boundary_radius);
      CAPTURE(s.radii.size());
      CHECK_FALSE(r.violated);
      CHECK(static_cast<double>(r.actual_qubits) <= r.qubit_bound);
    }
  }
}

TEST_CASE("counterexamples outside the sweep regime are reported") {
  // Three radii on one coarse lattice: cross-radius edges grow like |R|^2
  // while the two-qubit bound grows like |R|.
  PackingScenario s;
  s.dimension = 2;
  s.boundary_radius = 4.0;
  s.radii = {0.6, 0.45, 0.3};
  s.spacing = 0.6;
  const auto r = empirical_vs_bound(s, Formulation::second_quantization);
  CHECK(r.violated);
  CHECK(static_cast<double>(r.actual_terms) > r.term_bound);
}
