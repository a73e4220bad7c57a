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


// Twenty constructible scenarios for checking the resource bounds: one to
// three radii on a shared spacing, in two and three dimensions. The sweep
// stays where the bounds hold: r_m / R_b between 0.4 and 0.5 and spacing
// between 0.3 and 0.6 of r_m. Smaller r_m / R_b lets the second-quantization
// term count outgrow its bound when several radii share a lattice, and a
// coarser spacing puts single-radius degrees on the jumps between lattice
// shells, where the first-quantization bound fails by a few percent.

#pragma once

#include <random>
#include <vector>

#include "qpack/packing_graph.hpp"

namespace resource_scenarios {

inline std::vector<qpack::PackingScenario> sweep() {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<qpack::PackingScenario> out;
  for (int k = 0; k < 20; ++k) {
    qpack::PackingScenario s;
    s.dimension = k % 4 == 3 ? 3 : 2;
    s.boundary_radius = 3.0 + 2.0 * u(rng);
    if (s.dimension == 3) s.cylinder_height = 2.0 * s.boundary_radius;
    const double rm = s.boundary_radius * (0.4 + 0.1 * u(rng));
    const int nr = 1 + k % 3;
    for (int i = 0; i < nr; ++i) s.radii.push_back(rm * (1.0 - 0.25 * i));
    s.spacing = rm * (0.3 + 0.3 * u(rng));
    out.push_back(s);
  }
  return out;
}

}  // namespace resource_scenarios
