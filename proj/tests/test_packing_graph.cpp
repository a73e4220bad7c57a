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
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qpack/error.hpp"
#include "qpack/packing_graph.hpp"

using namespace qpack;

namespace {

PackingScenario disc(double rb, double a, std::vector<double> radii = {1.0}) {
  PackingScenario s;
  s.dimension = 2;
  s.boundary_radius = rb;
  s.radii = std::move(radii);
  s.spacing = a;
  return s;
}

}  // namespace

TEST_CASE("lattice point counts") {
  const auto s = disc(4.2, std::sqrt(2.0));
  CHECK(build_lattice(s, 1.0).size() == 21);
  CHECK(build_lattice(disc(4.2, 10.0), 1.0).size() == 1);

  // Dense lattice against a full scan of the bounding box.
  for (double a : {0.75, 0.5, 0.33}) {
    const auto t = disc(4.2, a);
    CHECK(build_lattice(t, 1.0).size() == oracle::lattice_points(t, 1.0, a).size());
  }
}

TEST_CASE("lattice points in a cylinder") {
  PackingScenario s;
  s.dimension = 3;
  s.boundary_radius = 3.0;
  s.cylinder_height = 4.0;
  s.radii = {1.0};
  s.spacing = 0.8;
  const auto pts = build_lattice(s, 1.0);
  CHECK(pts.size() == oracle::lattice_points(s, 1.0, 0.8).size());
  for (const auto& p : pts) {
    CHECK(p[2] >= 1.0 - 1e-9);
    CHECK(p[2] <= 3.0 + 1e-9);
  }
}

TEST_CASE("overlap predicate") {
  const double r2 = std::sqrt(2.0);
  CHECK(overlap_edge({0, 0, 0}, 1.0, {r2, 0, 0}, 1.0));
  CHECK_FALSE(overlap_edge({0, 0, 0}, 1.0, {r2, r2, 0}, 1.0));
  CHECK(overlap_edge({0, 0, 0}, 1.0, {r2, r2, 0}, 1.0, TangencyRule::forbid));
  CHECK_FALSE(overlap_edge({0, 0, 0}, 1.0, {3, 0, 0}, 1.5));
  CHECK_THROWS_AS(overlap_edge({1, 1, 0}, 1.0, {1, 1, 0}, 1.0), InvalidArgument);
}

TEST_CASE("garnet instance reduces to 18 nodes") {
  const auto g = build_graph(garnet_scenario());
  CHECK(g.candidate_count == 21);
  CHECK(g.size() == 18);
  // Grid neighbours only: diagonal pairs are tangent.
  for (const auto& e : g.edges) {
    const auto& a = g.node(e.u).coord;
    const auto& b = g.node(e.v).coord;
    CHECK(std::hypot(a[0] - b[0], a[1] - b[1]) == doctest::Approx(std::sqrt(2.0)));
  }
  // The fixed circle removes itself and its two in-lattice neighbours.
  std::set<std::array<int, 3>> sites;
  for (const auto& n : g.nodes) sites.insert(lattice_index(g, n));
  CHECK_FALSE(sites.count({2, -1, 0}));
  CHECK_FALSE(sites.count({2, 0, 0}));
  CHECK_FALSE(sites.count({1, -1, 0}));
  CHECK(sites.count({1, -2, 0}));
}

TEST_CASE("edges match an all-pairs scan") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> rb(2.0, 4.0), a(0.4, 1.2), r(0.3, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    PackingScenario s = disc(rb(rng), a(rng), {r(rng)});
    if (trial % 2) s.radii.push_back(s.radii[0] * 0.5);
    if (trial % 3 == 0) s.spacing_per_radius[0] = s.spacing.value() * 1.3;
    const auto g = build_graph(s);
    std::set<std::pair<std::size_t, std::size_t>> got;
    for (const auto& e : g.edges) {
      CHECK(e.u < e.v);
      got.insert({e.u, e.v});
      CHECK(e.kind == edge_kind(g.node(e.u).radius_index, g.node(e.v).radius_index,
                                s.radii.size()));
    }
    // Coincident centres with different radii always conflict; the scan
    // catches them through the radius sum.
    CHECK(got == oracle::overlapping_pairs(g));
  }
}

TEST_CASE("two-radius graph on a unit lattice") {
  PackingScenario s = disc(3.0, 1.0, {1.0, 0.5});
  const auto g = build_graph(s);
  CHECK(g.size() == build_lattice(s, 1.0).size() + build_lattice(s, 0.5).size());
  std::set<std::pair<std::size_t, std::size_t>> got;
  for (const auto& e : g.edges) got.insert({e.u, e.v});
  CHECK(got == oracle::overlapping_pairs(g));
}

TEST_CASE("single admissible node") {
  const auto g = build_graph(disc(1.5, 5.0));
  CHECK(g.size() == 1);
  CHECK(g.edges.empty());
}

TEST_CASE("subgraph extraction") {
  const auto g = build_graph(garnet_scenario());
  std::set<std::size_t> all;
  for (const auto& n : g.nodes) all.insert(n.id);
  const auto same = extract_subgraph(g, all);
  CHECK(same.size() == g.size());
  CHECK(same.edges.size() == g.edges.size());

  CHECK(extract_subgraph(g, {}).size() == 0);

  const std::set<std::size_t> half{0, 1, 2, 5, 6, 9, 10};
  const auto sub = extract_subgraph(g, half);
  CHECK(sub.size() == half.size());
  for (const auto& e : sub.edges) {
    CHECK(half.count(e.u));
    CHECK(half.count(e.v));
  }
  std::size_t inside = 0;
  for (const auto& e : g.edges) inside += half.count(e.u) && half.count(e.v);
  CHECK(sub.edges.size() == inside);
  CHECK_THROWS_AS(extract_subgraph(g, {999}), InvalidArgument);
}

TEST_CASE("lattice index selection") {
  const auto g = build_graph(garnet_scenario());
  const auto ids = nodes_at_lattice_indices(g, {{0, 0, 0}, {-2, 1, 0}, {7, 7, 0}});
  CHECK(ids.size() == 2);
  for (auto id : ids) {
    const auto li = lattice_index(g, g.node(id));
    CHECK(((li == std::array<int, 3>{0, 0, 0}) || (li == std::array<int, 3>{-2, 1, 0})));
  }
}

TEST_CASE("packing density") {
  const auto g = build_graph(garnet_scenario());
  CHECK(packing_density(g, {}) == doctest::Approx(1.0 / (4.2 * 4.2)));
  CHECK(packing_density(g, {}, false) == 0.0);
  const auto one = build_graph(disc(2.0, 5.0));
  const std::vector<std::size_t> sel{one.nodes[0].id};
  CHECK(packing_density(one, sel) == doctest::Approx(0.25));
  // Adjacent pair overlaps.
  const std::vector<std::size_t> bad{g.edges[0].u, g.edges[0].v};
  CHECK_FALSE(is_overlap_free(g, bad));
  CHECK_THROWS_AS(packing_density(g, bad), InvalidArgument);
}

TEST_CASE("halving the spacing keeps old sites") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> rb(2.0, 5.0), a(0.3, 1.5);
  for (int t = 0; t < 20; ++t) {
    const auto s = disc(rb(rng), a(rng));
    auto fine = s;
    fine.spacing = *s.spacing / 2;
    const auto coarse_pts = build_lattice(s, 1.0);
    const auto fine_pts = build_lattice(fine, 1.0);
    for (const auto& p : coarse_pts) {
      bool found = false;
      for (const auto& q : fine_pts)
        found = found || (std::abs(p[0] - q[0]) < 1e-9 && std::abs(p[1] - q[1]) < 1e-9);
      CHECK(found);
    }
  }
}

TEST_CASE("scenario validation") {
  auto s = disc(4.0, 1.0);
  s.radii = {1.0, 1.0};
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = disc(-1.0, 1.0);
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = disc(4.0, 1.0);
  s.dimension = 4;
  CHECK_THROWS_AS(s.validate(), ValidationError);
}
