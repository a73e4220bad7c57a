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

#include "qpack/resources.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "qpack/error.hpp"

namespace qpack {

namespace {

Bound make_bound(double v) {
  const double r = std::round(v);
  const double c = std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v)) ? r : std::ceil(v);
  return {v, static_cast<std::uint64_t>(c)};
}

double ratio(double bound, std::size_t actual) {
  return actual == 0 ? std::numeric_limits<double>::infinity()
                     : bound / static_cast<double>(actual);
}

}  // namespace

void ScalingInput::validate() const {
  if (num_radii < 1) throw ValidationError("num_radii", "at least one radius required");
  if (points_per_side < 1) throw ValidationError("q", "at least one point per side required");
  if (dimension != 2 && dimension != 3) throw ValidationError("d", "dimension must be 2 or 3");
  if (!(max_radius > 0.0)) throw ValidationError("rm", "maximum radius must be positive");
  if (!(boundary_radius > 0.0)) throw ValidationError("rb", "boundary radius must be positive");
  if (max_radius > boundary_radius)
    throw ValidationError("rm", "maximum radius exceeds the boundary radius");
}

SecondQuantBounds second_quant_bounds(const ScalingInput& in) {
  in.validate();
  const double R = static_cast<double>(in.num_radii);
  const double q = static_cast<double>(in.points_per_side);
  return {make_bound(R * std::pow(q, in.dimension)),
          make_bound(R * std::pow(in.max_radius * q * q / in.boundary_radius, in.dimension))};
}

FirstQuantBounds first_quant_bounds(const ScalingInput& in) {
  in.validate();
  const double R = static_cast<double>(in.num_radii);
  const double q = static_cast<double>(in.points_per_side);
  const double qd = std::pow(q, in.dimension);
  const double per_site = std::pow(in.max_radius * q / in.boundary_radius, in.dimension);
  FirstQuantBounds b;
  b.register_width = register_width(in.num_radii);
  const double w = static_cast<double>(b.register_width);
  b.qubits = make_bound(w * qd);
  b.cnots = make_bound(R * std::pow(2.0, 2.0 * w) * per_site);
  b.qubits_approx = std::log2(R) * qd;
  b.cnots_approx = R * R * R * per_site;
  return b;
}

std::size_t points_per_side(const PackingScenario& scenario) {
  scenario.validate();
  std::size_t q = 1;
  for (std::size_t i = 0; i < scenario.radii.size(); ++i) {
    const double a = scenario.spacing_for(i);
    const auto side =
        static_cast<std::size_t>(std::floor(scenario.boundary_radius / a + kGeometryEps));
    q = std::max(q, 2 * side + 1);
    if (scenario.dimension == 3)
      q = std::max(q, static_cast<std::size_t>(
                          std::floor(scenario.cylinder_height / a + kGeometryEps)) + 1);
  }
  return q;
}

ScalingInput scaling_input(const PackingScenario& scenario) {
  ScalingInput in;
  in.num_radii = scenario.radii.size();
  in.points_per_side = points_per_side(scenario);
  in.dimension = scenario.dimension;
  in.max_radius = *std::max_element(scenario.radii.begin(), scenario.radii.end());
  in.boundary_radius = scenario.boundary_radius;
  return in;
}

EmpiricalReport empirical_vs_bound(const PackingScenario& scenario,
                                   Formulation formulation) {
  EmpiricalReport rep;
  rep.formulation = formulation == Formulation::mis ? Formulation::second_quantization
                                                    : formulation;
  rep.input = scaling_input(scenario);
  const PackingGraph g = build_graph(scenario);
  rep.max_degree = g.max_degree();
  rep.degree_bound =
      std::pow(rep.input.max_radius * static_cast<double>(rep.input.points_per_side) /
                   rep.input.boundary_radius,
               rep.input.dimension);
  rep.degree_ratio = static_cast<double>(rep.max_degree) / rep.degree_bound;

  if (rep.formulation == Formulation::second_quantization) {
    const auto b = second_quant_bounds(rep.input);
    rep.actual_qubits = g.size();
    rep.actual_terms = g.edges.size();
    rep.qubit_bound = b.qubits.value;
    rep.term_bound = b.cnots.value;
    rep.assumption =
        "q counts lattice points across the boundary diameter (a ~ 2 R_b / q); "
        "terms are ZZ couplings, each compiled to two CZ gates";
  } else {
    const auto b = first_quant_bounds(rep.input);
    const auto [op, layout] = first_quantization_hamiltonian(g, default_volume_weights(scenario));
    rep.actual_qubits = layout.num_qubits();
    std::vector<std::size_t> per_site(layout.sites.size(), 0);
    auto count = [&](const std::vector<std::size_t>& qubits) {
      std::set<std::size_t> sites;
      for (auto q : qubits) sites.insert(layout.slots[q].node_id);
      if (sites.size() < 2) return;
      for (auto s : sites) ++per_site[s];
    };
    for (const auto& [e, w] : op.quadratic) count({e.first, e.second});
    for (const auto& [qs, w] : op.higher) count(qs);
    rep.actual_terms =
        per_site.empty() ? 0 : *std::max_element(per_site.begin(), per_site.end());
    rep.qubit_bound = b.qubits.value;
    rep.term_bound = b.cnots.value;
    rep.assumption =
        "q counts lattice points across the boundary diameter (a ~ 2 R_b / q); "
        "the two-qubit bound carries no site factor, so it is compared per site";
  }
  rep.qubit_slack = ratio(rep.qubit_bound, rep.actual_qubits);
  rep.term_slack = ratio(rep.term_bound, rep.actual_terms);
  rep.violated = static_cast<double>(rep.actual_qubits) > rep.qubit_bound + 1e-9 ||
                 static_cast<double>(rep.actual_terms) > rep.term_bound + 1e-9;
  return rep;
}

}  // namespace qpack
