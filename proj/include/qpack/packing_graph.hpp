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

// Discretized bounded packing instances.
//
// A scenario places a square (d=2) or cubic (d=3) lattice inside a circular
// boundary (or a finite cylinder), keeps the sites where a sphere of a given
// radius fits, and connects every pair of placements whose spheres would
// overlap. Selecting a set of placements without internal edges is a valid
// packing.

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace qpack {

/// Cartesian coordinate; the third component is zero for d=2.
using Coord = std::array<double, 3>;

/// Slack used by every floating point geometry comparison.
inline constexpr double kGeometryEps = 1e-9;

/// How touching spheres are treated by the overlap predicate.
enum class TangencyRule {
  allow,   // distance < r_i + r_j - eps is a conflict; tangent spheres coexist
  forbid,  // distance <= r_i + r_j + eps is a conflict
};

struct FixedPlacement {
  Coord center{};
  double radius = 0.0;
};

struct PackingScenario {
  int dimension = 2;
  double boundary_radius = 0.0;
  /// Only meaningful for d=3: spheres must satisfy r <= z <= height - r.
  double cylinder_height = 0.0;
  /// Distinct, strictly positive radii. Radius index i refers to radii[i].
  std::vector<double> radii;
  /// Shared lattice spacing. Ignored for radii listed in spacing_per_radius.
  std::optional<double> spacing;
  std::map<std::size_t, double> spacing_per_radius;
  std::vector<FixedPlacement> fixed_placements;
  TangencyRule tangency = TangencyRule::allow;

  /// Throws ValidationError naming the first offending field.
  void validate() const;
  double spacing_for(std::size_t radius_index) const;
  bool homogeneous() const { return radii.size() == 1; }
};

/// True if a sphere of `radius` centred at `p` lies inside the boundary.
bool fits_boundary(const PackingScenario& scenario, const Coord& p,
                   double radius);

struct PackingNode {
  std::size_t id = 0;
  Coord coord{};
  std::size_t radius_index = 0;
};

struct PackingEdge {
  std::size_t u = 0;  // u < v
  std::size_t v = 0;
  /// Radius-pair kind, see edge_kind().
  std::size_t kind = 0;
};

/// Encodes an unordered radius-index pair (i, j) as min*s + max.
std::size_t edge_kind(std::size_t i, std::size_t j, std::size_t num_radii);

/// Discretized instance. Nodes are ordered lexicographically by coordinate and
/// then by radius index; build_graph assigns ids 0..n-1 in that order and
/// extract_subgraph keeps them, so ids are not necessarily contiguous.
struct PackingGraph {
  PackingScenario scenario;
  std::vector<PackingNode> nodes;
  std::vector<PackingEdge> edges;  // sorted by (u, v), deduplicated
  /// Lattice placements before fixed placements removed any, for reporting.
  std::size_t candidate_count = 0;

  std::size_t size() const { return nodes.size(); }
  /// Position of `id` in `nodes`; throws InvalidArgument if absent.
  std::size_t index_of(std::size_t id) const;
  bool contains(std::size_t id) const;
  const PackingNode& node(std::size_t id) const { return nodes[index_of(id)]; }
  /// Neighbour lists indexed by node position (not id).
  std::vector<std::vector<std::size_t>> adjacency() const;
  std::size_t max_degree() const;
  bool homogeneous() const { return scenario.radii.size() == 1; }
};

/// Lattice points admissible for a sphere of `radius`, lexicographic order.
std::vector<Coord> build_lattice(const PackingScenario& scenario,
                                 double radius);
/// Overload taking the lattice spacing explicitly.
std::vector<Coord> build_lattice(const PackingScenario& scenario,
                                 double radius, double spacing);

/// Whether spheres (p, r_i) and (q, r_j) would overlap. Rejects p == q.
bool overlap_edge(const Coord& p, double r_i, const Coord& q, double r_j,
                  TangencyRule rule = TangencyRule::allow);

PackingGraph build_graph(const PackingScenario& scenario);

/// Induced subgraph on `node_ids`. Unknown ids throw InvalidArgument.
PackingGraph extract_subgraph(const PackingGraph& g,
                              const std::set<std::size_t>& node_ids);

/// Ids of the nodes whose coordinate is lattice_index * spacing (per radius).
/// Indices with no node are ignored.
std::set<std::size_t> nodes_at_lattice_indices(
    const PackingGraph& g, const std::vector<std::array<int, 3>>& indices);

/// Lattice index (coordinate / spacing, rounded) of a node.
std::array<int, 3> lattice_index(const PackingGraph& g, const PackingNode& node);

/// Area (d=2) or volume (d=3) of one sphere.
double sphere_measure(int dimension, double radius);
/// Area of the boundary disc or volume of the cylinder.
double boundary_measure(const PackingScenario& scenario);

/// Re-checks a selection against raw coordinates, fixed placements included.
bool is_overlap_free(const PackingGraph& g,
                     std::span<const std::size_t> selected);

/// Occupied measure over boundary measure. Throws InvalidArgument for
/// unknown ids or overlapping selections.
double packing_density(const PackingGraph& g,
                       std::span<const std::size_t> selected,
                       bool include_fixed = true);

/// The 20-qubit-device instance: d=2, a=sqrt(2), r=1, R_b=4.2, one circle
/// fixed at lattice index (2, -1) on the boundary.
PackingScenario garnet_scenario();

/// Lattice index of the fixed circle in garnet_scenario(), in units of a.
inline constexpr std::array<int, 2> kGarnetFixedSite{2, -1};

}  // namespace qpack
