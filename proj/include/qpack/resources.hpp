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

// Closed-form qubit and two-qubit-gate bounds for the heterogeneous
// formulations, and their check against constructed instances.

#pragma once

#include <cstdint>
#include <string>

#include "qpack/hamiltonian.hpp"
#include "qpack/packing_graph.hpp"

namespace qpack {

struct ScalingInput {
  std::size_t num_radii = 1;
  std::size_t points_per_side = 1;  // q
  int dimension = 2;
  double max_radius = 1.0;       // r_m
  double boundary_radius = 1.0;  // R_b

  /// Throws ValidationError unless everything is positive, d is 2 or 3 and
  /// r_m <= R_b.
  void validate() const;
};

struct Bound {
  double value = 0.0;
  /// Smallest integer >= value (values within 1e-9 of an integer snap to it).
  std::uint64_t ceiling = 0;
};

struct SecondQuantBounds {
  Bound qubits;  // |R| q^d
  Bound cnots;   // |R| (r_m q^2 / R_b)^d
};

struct FirstQuantBounds {
  std::size_t register_width = 1;  // ceil(log2(|R| + 1))
  Bound qubits;                    // width * q^d
  Bound cnots;                     // |R| 2^(2 width) (r_m q / R_b)^d
  double qubits_approx = 0.0;      // log2|R| q^d
  double cnots_approx = 0.0;       // |R|^3 (r_m q / R_b)^d
};

SecondQuantBounds second_quant_bounds(const ScalingInput& in);
FirstQuantBounds first_quant_bounds(const ScalingInput& in);

/// Lattice points per side of the scenario's bounding box: the larger of
/// 2 floor(R_b / a) + 1 and, for d=3, floor(height / a) + 1, over all radii.
std::size_t points_per_side(const PackingScenario& scenario);
ScalingInput scaling_input(const PackingScenario& scenario);

struct EmpiricalReport {
  Formulation formulation = Formulation::second_quantization;
  ScalingInput input;
  std::size_t actual_qubits = 0;
  /// Second quantization: ZZ terms (= graph edges). First quantization: the
  /// largest number of cross-register Z products touching one site.
  std::size_t actual_terms = 0;
  std::size_t max_degree = 0;
  double qubit_bound = 0.0;
  double term_bound = 0.0;
  /// (r_m q / R_b)^d, reported against max_degree but not enforced.
  double degree_bound = 0.0;
  /// bound / actual; +infinity when actual is 0.
  double qubit_slack = 0.0;
  double term_slack = 0.0;
  double degree_ratio = 0.0;  // max_degree / degree_bound
  bool violated = false;
  std::string assumption;
};

/// Builds the graph (and the first-quantization operator when asked),
/// counts resources and compares them to the bounds. Mis is treated as
/// second quantization.
EmpiricalReport empirical_vs_bound(const PackingScenario& scenario,
                                   Formulation formulation);

}  // namespace qpack
