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

// Lowering of the QAOA ansatz to PRX + CZ circuits on a coupling map.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qpack/hamiltonian.hpp"
#include "qpack/packing_graph.hpp"
#include "qpack/qaoa.hpp"
#include "qpack/statevector.hpp"

namespace qpack {

using Edge = std::pair<std::size_t, std::size_t>;

struct CouplingMap {
  /// Physical qubits are 0..num_qubits-1.
  std::size_t num_qubits = 0;
  std::vector<Edge> edges;  // stored with first < second
  /// Planar grid position per qubit, in lattice units.
  std::optional<std::vector<std::array<int, 2>>> coords;

  bool has_edge(std::size_t a, std::size_t b) const;
  std::size_t max_degree() const;
  /// Throws ValidationError for self loops, duplicates or unknown qubits.
  void validate() const;
};

/// The 20-qubit square grid of the Garnet device: a 5x5 grid with the four
/// corners and the site (2, -1) removed.
CouplingMap garnet_coupling_map();

struct EdgeColoring {
  std::vector<std::size_t> colors;  // per input edge
  std::size_t num_colors = 0;
};

/// Proper edge coloring. Bipartite graphs get max-degree colors (alternating
/// path recoloring); others at most max-degree + 1 (Misra-Gries). Output is
/// deterministic in the edge order.
EdgeColoring edge_color(const std::vector<Edge>& edges);
EdgeColoring edge_color(const CouplingMap& map);
bool is_proper_coloring(const std::vector<Edge>& edges, const EdgeColoring& c);

struct Gate {
  enum class Kind { prx, cz };
  Kind kind = Kind::prx;
  std::size_t q0 = 0;
  std::size_t q1 = 0;  // cz only
  double theta = 0.0;  // prx only
  double phi = 0.0;    // prx only
};

using Layer = std::vector<Gate>;

struct CircuitMetadata {
  std::size_t cz_count = 0;
  std::size_t depth = 0;
  /// CZ-pair rounds per QAOA layer: the number of colors in the ZZ schedule.
  std::size_t zz_depth = 0;
  std::size_t p = 0;
  std::optional<double> lambda;
};

struct CompiledCircuit {
  std::size_t num_qubits = 0;  // physical register size
  std::vector<Layer> layers;
  /// Physical qubit read out for each logical qubit, in logical order.
  std::vector<std::size_t> measured;
  /// Residual Z rotation per physical qubit, tracked virtually and never
  /// played as a pulse. It does not affect measurement statistics.
  std::vector<double> virtual_z;
  CircuitMetadata metadata;

  /// Throws ValidationError when a layer reuses a qubit or, given a map,
  /// a CZ lies off the couplers.
  void validate(const CouplingMap* map = nullptr) const;
};

/// Logical qubit -> physical qubit.
using Placement = std::vector<std::size_t>;

/// Places MIS / second-quantization qubits by matching each node's lattice
/// index (coordinate / spacing) to the map's grid coordinates. Throws
/// LayoutError when a node has no matching physical qubit.
Placement placement_by_coordinates(const PackingGraph& g, const QubitLayout& layout,
                                   const CouplingMap& map);

/// Compiles |+>^n and p cost / mixer layers. Each ZZ term becomes two CZ
/// gates on its coupler; single-qubit work between CZ rounds is merged into
/// at most one PRX per qubit. Throws LayoutError when a ZZ term falls off the
/// map and InvalidArgument for terms above degree two.
CompiledCircuit compile_qaoa(const IsingOperator& op, const XMixer& mixer,
                             const QaoaParams& params, const CouplingMap& map,
                             const Placement& placement);

/// Noiseless simulation on the measured qubits (logical order), virtual Z
/// frame included.
StateVector simulate_circuit(const CompiledCircuit& circuit,
                             std::size_t max_qubits = kDefaultQubitCap);

struct VerifyReport {
  double max_deviation = 0.0;
  bool passed = false;
  std::size_t cz_count = 0;
  std::size_t expected_cz_count = 0;
};

inline constexpr double kVerifyTolerance = 1e-8;

/// Compares simulate_circuit against evolve() up to global phase. p = 0
/// params compare against |+>^n.
VerifyReport verify_circuit(const CompiledCircuit& circuit, const IsingOperator& op,
                            const XMixer& mixer, const QaoaParams& params);

/// Decomposition U = e^{i delta} RZ(a) PRX(theta, phi) of a 2x2 unitary.
struct PrxRz {
  double theta = 0.0;
  double phi = 0.0;
  double rz = 0.0;
};
PrxRz decompose_prx_rz(const Mat2& u);

}  // namespace qpack
