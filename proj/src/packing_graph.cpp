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

#include "qpack/packing_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qpack/error.hpp"

namespace qpack {
namespace {

double radial_norm(const Coord& p) { return std::hypot(p[0], p[1]); }

double distance(const Coord& p, const Coord& q) {
  const double dx = p[0] - q[0];
  const double dy = p[1] - q[1];
  const double dz = p[2] - q[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

bool same_point(const Coord& p, const Coord& q) {
  return distance(p, q) <= kGeometryEps;
}

// Conflict predicate used by graph construction; coincident centres always
// conflict because two spheres cannot share a centre.
bool conflicts(const Coord& p, double r_i, const Coord& q, double r_j,
               TangencyRule rule) {
  const double d = distance(p, q);
  if (d <= kGeometryEps) return true;
  if (rule == TangencyRule::allow) return d < r_i + r_j - kGeometryEps;
  return d <= r_i + r_j + kGeometryEps;
}

bool coord_less(const Coord& a, const Coord& b) {
  for (int k = 0; k < 3; ++k) {
    if (a[k] < b[k] - kGeometryEps) return true;
    if (a[k] > b[k] + kGeometryEps) return false;
  }
  return false;
}

}  // namespace

void PackingScenario::validate() const {
  if (dimension != 2 && dimension != 3)
    throw ValidationError("dimension", "must be 2 or 3");
  if (!(boundary_radius > 0.0))
    throw ValidationError("boundary_radius", "must be > 0");
  if (dimension == 3 && !(cylinder_height > 0.0))
    throw ValidationError("cylinder_height", "must be > 0 for d=3");
  if (radii.empty()) throw ValidationError("radii", "at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw ValidationError("radii", "must be > 0");
    for (std::size_t j = 0; j < i; ++j)
      if (radii[i] == radii[j]) throw ValidationError("radii", "must be distinct");
  }
  if (spacing && !(*spacing > 0.0))
    throw ValidationError("spacing", "must be > 0");
  for (const auto& [index, a] : spacing_per_radius) {
    if (index >= radii.size())
      throw ValidationError("spacing_per_radius", "unknown radius index");
    if (!(a > 0.0)) throw ValidationError("spacing_per_radius", "must be > 0");
  }
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (!spacing && !spacing_per_radius.contains(i))
      throw ValidationError("spacing", "no spacing for radius index " +
                                           std::to_string(i));
  for (const auto& f : fixed_placements) {
    if (!(f.radius > 0.0))
      throw ValidationError("fixed_placements", "radius must be > 0");
    if (!fits_boundary(*this, f.center, f.radius))
      throw ValidationError("fixed_placements", "placement violates boundary");
  }
  for (std::size_t i = 0; i < fixed_placements.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (conflicts(fixed_placements[i].center, fixed_placements[i].radius,
                    fixed_placements[j].center, fixed_placements[j].radius,
                    tangency))
        throw ValidationError("fixed_placements", "fixed placements overlap");
}

double PackingScenario::spacing_for(std::size_t radius_index) const {
  if (auto it = spacing_per_radius.find(radius_index);
      it != spacing_per_radius.end())
    return it->second;
  if (!spacing)
    throw InvalidArgument("no spacing for radius index " +
                          std::to_string(radius_index));
  return *spacing;
}

bool fits_boundary(const PackingScenario& scenario, const Coord& p,
                   double radius) {
  if (radial_norm(p) + radius > scenario.boundary_radius + kGeometryEps)
    return false;
  if (scenario.dimension == 3) {
    if (p[2] - radius < -kGeometryEps) return false;
    if (p[2] + radius > scenario.cylinder_height + kGeometryEps) return false;
  } else if (std::abs(p[2]) > kGeometryEps) {
    return false;
  }
  return true;
}

std::size_t edge_kind(std::size_t i, std::size_t j, std::size_t num_radii) {
  return std::min(i, j) * num_radii + std::max(i, j);
}

std::size_t PackingGraph::index_of(std::size_t id) const {
  auto it = std::lower_bound(
      nodes.begin(), nodes.end(), id,
      [](const PackingNode& n, std::size_t value) { return n.id < value; });
  if (it == nodes.end() || it->id != id)
    throw InvalidArgument("unknown node id " + std::to_string(id));
  return static_cast<std::size_t>(it - nodes.begin());
}

bool PackingGraph::contains(std::size_t id) const {
  auto it = std::lower_bound(
      nodes.begin(), nodes.end(), id,
      [](const PackingNode& n, std::size_t value) { return n.id < value; });
  return it != nodes.end() && it->id == id;
}

std::vector<std::vector<std::size_t>> PackingGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (const auto& e : edges) {
    const auto a = index_of(e.u);
    const auto b = index_of(e.v);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::size_t PackingGraph::max_degree() const {
  std::size_t best = 0;
  for (const auto& list : adjacency()) best = std::max(best, list.size());
  return best;
}

std::vector<Coord> build_lattice(const PackingScenario& scenario,
                                 double radius) {
  const auto it =
      std::find(scenario.radii.begin(), scenario.radii.end(), radius);
  if (it == scenario.radii.end())
    throw InvalidArgument("radius is not part of the scenario");
  const auto index = static_cast<std::size_t>(it - scenario.radii.begin());
  return build_lattice(scenario, radius, scenario.spacing_for(index));
}

std::vector<Coord> build_lattice(const PackingScenario& scenario,
                                 double radius, double spacing) {
  if (!(spacing > 0.0)) throw InvalidArgument("lattice spacing must be > 0");
  if (!(radius > 0.0)) throw InvalidArgument("radius must be > 0");
  std::vector<Coord> points;
  const double reach = scenario.boundary_radius - radius;
  if (reach < -kGeometryEps) return points;
  const auto k_max =
      static_cast<long>(std::floor(std::max(reach, 0.0) / spacing + 1e-12));

  long z_lo = 0;
  long z_hi = 0;
  if (scenario.dimension == 3) {
    z_lo = static_cast<long>(std::ceil((radius - kGeometryEps) / spacing));
    z_hi = static_cast<long>(std::floor(
        (scenario.cylinder_height - radius + kGeometryEps) / spacing));
  }
  // Loop order x, y, z gives lexicographic output directly.
  for (long i = -k_max; i <= k_max; ++i) {
    for (long j = -k_max; j <= k_max; ++j) {
      for (long k = z_lo; k <= z_hi; ++k) {
        const Coord p{static_cast<double>(i) * spacing,
                      static_cast<double>(j) * spacing,
                      static_cast<double>(k) * spacing};
        if (fits_boundary(scenario, p, radius)) points.push_back(p);
      }
    }
  }
  return points;
}

bool overlap_edge(const Coord& p, double r_i, const Coord& q, double r_j,
                  TangencyRule rule) {
  if (same_point(p, q))
    throw InvalidArgument("overlap_edge: identical coordinates");
  return conflicts(p, r_i, q, r_j, rule);
}

PackingGraph build_graph(const PackingScenario& scenario) {
  scenario.validate();
  PackingGraph g;
  g.scenario = scenario;

  std::vector<PackingNode> candidates;
  for (std::size_t ri = 0; ri < scenario.radii.size(); ++ri)
    for (const auto& p : build_lattice(scenario, scenario.radii[ri],
                                       scenario.spacing_for(ri)))
      candidates.push_back({0, p, ri});
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const PackingNode& a, const PackingNode& b) {
                     if (coord_less(a.coord, b.coord)) return true;
                     if (coord_less(b.coord, a.coord)) return false;
                     return a.radius_index < b.radius_index;
                   });
  g.candidate_count = candidates.size();

  for (const auto& n : candidates) {
    const double r = scenario.radii[n.radius_index];
    const bool blocked = std::any_of(
        scenario.fixed_placements.begin(), scenario.fixed_placements.end(),
        [&](const FixedPlacement& f) {
          return conflicts(f.center, f.radius, n.coord, r, scenario.tangency);
        });
    if (!blocked) g.nodes.push_back(n);
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i) g.nodes[i].id = i;

  // Nodes are sorted by x, so the scan can stop once x separation alone rules
  // out any conflict.
  const double r_max =
      *std::max_element(scenario.radii.begin(), scenario.radii.end());
  const double reach = 2.0 * r_max + kGeometryEps;
  const auto s = scenario.radii.size();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& a = g.nodes[i];
    for (std::size_t j = i + 1; j < g.nodes.size(); ++j) {
      const auto& b = g.nodes[j];
      if (b.coord[0] - a.coord[0] > reach) break;
      if (conflicts(a.coord, scenario.radii[a.radius_index], b.coord,
                    scenario.radii[b.radius_index], scenario.tangency))
        g.edges.push_back({a.id, b.id, edge_kind(a.radius_index,
                                                 b.radius_index, s)});
    }
  }
  return g;
}

PackingGraph extract_subgraph(const PackingGraph& g,
                              const std::set<std::size_t>& node_ids) {
  for (auto id : node_ids)
    if (!g.contains(id))
      throw InvalidArgument("extract_subgraph: unknown node id " +
                            std::to_string(id));
  PackingGraph sub;
  sub.scenario = g.scenario;
  for (const auto& n : g.nodes)
    if (node_ids.contains(n.id)) sub.nodes.push_back(n);
  for (const auto& e : g.edges)
    if (node_ids.contains(e.u) && node_ids.contains(e.v))
      sub.edges.push_back(e);
  sub.candidate_count = sub.nodes.size();
  return sub;
}

double sphere_measure(int dimension, double radius) {
  if (dimension == 2) return std::numbers::pi * radius * radius;
  return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
}

double boundary_measure(const PackingScenario& scenario) {
  const double disc =
      std::numbers::pi * scenario.boundary_radius * scenario.boundary_radius;
  return scenario.dimension == 2 ? disc : disc * scenario.cylinder_height;
}

bool is_overlap_free(const PackingGraph& g,
                     std::span<const std::size_t> selected) {
  struct Ball {
    Coord c;
    double r;
  };
  std::vector<Ball> balls;
  for (auto id : selected) {
    const auto& n = g.node(id);
    balls.push_back({n.coord, g.scenario.radii[n.radius_index]});
  }
  const std::size_t free_count = balls.size();
  for (const auto& f : g.scenario.fixed_placements)
    balls.push_back({f.center, f.radius});
  for (std::size_t i = 0; i < free_count; ++i)
    for (std::size_t j = i + 1; j < balls.size(); ++j)
      if (conflicts(balls[i].c, balls[i].r, balls[j].c, balls[j].r,
                    g.scenario.tangency))
        return false;
  return true;
}

double packing_density(const PackingGraph& g,
                       std::span<const std::size_t> selected,
                       bool include_fixed) {
  if (!is_overlap_free(g, selected))
    throw InvalidArgument("packing_density: selection overlaps");
  const int d = g.scenario.dimension;
  double occupied = 0.0;
  for (auto id : selected)
    occupied += sphere_measure(d, g.scenario.radii[g.node(id).radius_index]);
  if (include_fixed)
    for (const auto& f : g.scenario.fixed_placements)
      occupied += sphere_measure(d, f.radius);
  return occupied / boundary_measure(g.scenario);
}

std::array<int, 3> lattice_index(const PackingGraph& g, const PackingNode& node) {
  const double a = g.scenario.spacing_for(node.radius_index);
  return {static_cast<int>(std::lround(node.coord[0] / a)),
          static_cast<int>(std::lround(node.coord[1] / a)),
          static_cast<int>(std::lround(node.coord[2] / a))};
}

std::set<std::size_t> nodes_at_lattice_indices(
    const PackingGraph& g, const std::vector<std::array<int, 3>>& indices) {
  const std::set<std::array<int, 3>> wanted(indices.begin(), indices.end());
  std::set<std::size_t> ids;
  for (const auto& n : g.nodes)
    if (wanted.contains(lattice_index(g, n))) ids.insert(n.id);
  return ids;
}

PackingScenario garnet_scenario() {
  PackingScenario s;
  s.dimension = 2;
  s.boundary_radius = 4.2;
  s.radii = {1.0};
  s.spacing = std::numbers::sqrt2;
  s.fixed_placements.push_back(
      {{kGarnetFixedSite[0] * std::numbers::sqrt2,
        kGarnetFixedSite[1] * std::numbers::sqrt2, 0.0},
       1.0});
  return s;
}

}  // namespace qpack
