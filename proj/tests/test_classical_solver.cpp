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


#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qpack/classical_solver.hpp"
#include "qpack/error.hpp"

using namespace qpack;

namespace {

PackingScenario fig_scenario() {
  PackingScenario s;
  s.dimension = 2;
  s.boundary_radius = 4.2;
  s.radii = {1.0};
  s.spacing = 1.4;
  return s;
}

std::vector<std::pair<std::size_t, std::size_t>> positional_edges(const PackingGraph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (const auto& edge : g.edges) e.push_back({g.index_of(edge.u), g.index_of(edge.v)});
  return e;
}

}  // namespace

TEST_CASE("exact MIS on the garnet instance") {
  const auto g = build_graph(garnet_scenario());
  MisOptions opt;
  opt.enumerate_all = true;
  const auto sol = exact_mis(g, opt);
  CHECK(sol.size == 11);
  CHECK(sol.circles == 12);
  CHECK(sol.density == doctest::Approx(12.0 / (4.2 * 4.2)));
  CHECK(is_overlap_free(g, sol.witness));
  const auto brute = oracle::maximum_independent_sets(g.size(), positional_edges(g));
  CHECK(sol.all_optima.size() == brute.size());
}

TEST_CASE("edgeless graph") {
  for (std::size_t n : {1, 5, 20}) {
    const auto g = oracle::abstract_graph(n, {});
    CHECK(exact_mis(g).size == n);
  }
}

TEST_CASE("exact MIS against exhaustive enumeration") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    PackingGraph g;
    if (t % 2) {
      const std::size_t n = 4 + rng() % 17;
      g = oracle::abstract_graph(n, oracle::random_edges(n, 0.1 + 0.3 * u(rng), rng));
    } else {
      PackingScenario s;
      s.dimension = 2;
      s.boundary_radius = 2.5 + 1.5 * u(rng);
      s.radii = {1.0};
      s.spacing = 0.7 + 0.6 * u(rng);
      g = build_graph(s);
      if (g.size() > 20) {
        std::vector<std::size_t> ids;
        for (const auto& node : g.nodes) ids.push_back(node.id);
        std::shuffle(ids.begin(), ids.end(), rng);
        g = extract_subgraph(g, std::set<std::size_t>(ids.begin(), ids.begin() + 20));
      }
    }
    MisOptions opt;
    opt.enumerate_all = true;
    const auto sol = exact_mis(g, opt);
    const auto brute = oracle::maximum_independent_sets(g.size(), positional_edges(g));
    REQUIRE_FALSE(brute.empty());
    CHECK(sol.size == static_cast<std::size_t>(std::popcount(brute.front())));
    std::set<std::vector<std::size_t>> expected;
    for (auto m : brute) {
      std::vector<std::size_t> ids;
      for (std::size_t k = 0; k < g.size(); ++k)
        if (m >> k & 1u) ids.push_back(g.nodes[k].id);
      expected.insert(ids);
    }
    const std::set<std::vector<std::size_t>> got(sol.all_optima.begin(), sol.all_optima.end());
    CHECK(got == expected);
    CHECK(sol.witness == *expected.begin());
    CHECK(mis_size(g.adjacency()) == sol.size);
  }
}

TEST_CASE("timeout carries the best set so far") {
  PackingScenario s = fig_scenario();
  s.boundary_radius = 9.0;
  s.spacing = 0.45;
  const auto g = build_graph(s);
  MisOptions opt;
  opt.time_budget_s = 0.0;
  try {
    exact_mis(g, opt);
    FAIL("expected a timeout");
  } catch (const SolverTimeout& t) {
    CHECK(is_overlap_free(g, t.best_so_far().witness));
  }
}

TEST_CASE("exact solver needs one radius") {
  PackingScenario s = fig_scenario();
  s.radii = {1.0, 0.5};
  CHECK_THROWS_AS(exact_mis(build_graph(s)), InvalidArgument);
}

TEST_CASE("annealing") {
  const auto pair = oracle::abstract_graph(2, {{0, 1}});
  const auto op = mis_hamiltonian(pair, 2.0).first;
  AnnealSchedule sched;
  sched.sweeps = 100;
  const auto r = anneal_qubo(op, sched, 1);
  CHECK(r.energy == doctest::Approx(1.0));
  CHECK(classical_energy(op, r.bits) == doctest::Approx(r.energy));

  const auto g = build_graph(garnet_scenario());
  const auto gop = mis_hamiltonian(g, 2.0).first;
  sched.sweeps = 1000;
  sched.restarts = 10;
  const auto best = anneal_qubo(gop, sched, 7);
  CHECK(best.energy == doctest::Approx(static_cast<double>(g.size() - 11)));

  const auto sol = anneal_mis(g, 2.0, sched, 7);
  CHECK(sol.circles == 12);
  CHECK(is_overlap_free(g, sol.witness));

  // Same seed, same answer.
  CHECK(anneal_qubo(gop, sched, 7).bits == best.bits);
}

TEST_CASE("annealing without couplings follows the field signs") {
  IsingOperator op;
  op.num_qubits = 4;
  op.linear = {{0, 1.0}, {1, -1.0}, {2, 0.5}, {3, -2.0}};
  AnnealSchedule sched;
  sched.sweeps = 200;
  // +h prefers Z = -1 (bit 1), -h prefers bit 0.
  CHECK(anneal_qubo(op, sched, 3).bits == "1010");
}

TEST_CASE("spacing sweep") {
  const auto rows = spacing_sweep(fig_scenario(), {1.4, 1.1, 0.9, 0.75});
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].mis_size >= rows[i - 1].mis_size);
  for (const auto& r : rows) CHECK(r.solver == "exact");

  const auto big = spacing_sweep(fig_scenario(), {50.0});
  CHECK(big[0].mis_size <= 1);

  const auto rep = spacing_sweep(fig_scenario(), {0.9, 0.9});
  CHECK(rep[0].mis_size == rep[1].mis_size);
  CHECK(rep[0].nodes == rep[1].nodes);
  CHECK(rep[0].edges == rep[1].edges);
  CHECK(rep[0].density == rep[1].density);
}

TEST_CASE("spacing sweep marks timeouts") {
  SweepOptions opt;
  opt.time_budget_s = 0.0;
  const auto rows = spacing_sweep(fig_scenario(), {0.6}, opt);
  CHECK(rows[0].solver == "timeout");
}
