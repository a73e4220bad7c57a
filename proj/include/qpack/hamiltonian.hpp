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

// Diagonal cost operators for packing graphs.
//
// Bit convention used throughout the library: basis index x has qubit q in
// bit (x >> q) & 1, and a bitstring's character k is qubit k. A set bit means
// "occupied" (indicator x_v = 1), whose Z eigenvalue is -1.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qpack/packing_graph.hpp"

namespace qpack {

/// Weighted projector |bits><bits| on an ordered qubit subset.
struct Projector {
  std::vector<std::size_t> qubits;
  std::vector<std::uint8_t> bits;  // 0/1 per qubit
  double weight = 0.0;
};

/// Diagonal operator: constant + sum h_q Z_q + sum J_qr Z_q Z_r + higher-order
/// Z products + (optionally) unexpanded projectors.
struct IsingOperator {
  std::size_t num_qubits = 0;
  double constant = 0.0;
  std::map<std::size_t, double> linear;
  std::map<std::pair<std::size_t, std::size_t>, double> quadratic;  // i < j
  /// Z products of degree >= 3; keys are strictly increasing qubit lists.
  std::map<std::vector<std::size_t>, double> higher;
  std::vector<Projector> projectors;

  /// Adds w * prod_{q in qubits} Z_q. Repeated qubits cancel (Z^2 = I). Terms
  /// whose accumulated weight vanishes are erased.
  void add_z_product(std::vector<std::size_t> qubits, double w);
  void add_projector(Projector p);
  /// Largest |coefficient| over all non-constant terms (0 if none).
  double max_abs_coefficient() const;
  /// Smallest nonzero |coefficient| over all non-constant terms (0 if none).
  double min_abs_coefficient() const;
  std::size_t degree() const;
  bool has_projectors() const { return !projectors.empty(); }
  /// Throws ValidationError on broken invariants.
  void validate() const;
};

/// Projectors rewritten as Z products; the result has no projector terms.
IsingOperator expand_projectors(const IsingOperator& op);

enum class Formulation { mis, first_quantization, second_quantization };

const char* to_string(Formulation f);
Formulation formulation_from_string(std::string_view s);

/// Which graph placement a qubit belongs to.
struct QubitSlot {
  std::size_t node_id = 0;  // graph node id (mis, second) or site index (first)
  std::size_t bit = 0;      // bit position inside a first-quantization register
};

/// One first-quantization register: a lattice site and the placements
/// (codeword -> graph node id) it may hold.
struct SiteRegister {
  Coord coord{};
  std::vector<std::size_t> qubits;  // bit k of the codeword lives on qubits[k]
  std::map<std::size_t, std::size_t> codeword_node;  // codeword n >= 1
};

struct QubitLayout {
  Formulation formulation = Formulation::mis;
  std::vector<QubitSlot> slots;  // indexed by qubit
  std::size_t register_width = 1;
  std::vector<SiteRegister> sites;  // first quantization only

  std::size_t num_qubits() const { return slots.size(); }
  /// Graph node ids occupied by a measured bitstring. For first quantization,
  /// invalid codewords decode to no placement.
  std::vector<std::size_t> decode(std::string_view bits) const;
  /// Bitstring encoding a set of occupied graph node ids.
  std::string encode(const std::vector<std::size_t>& node_ids) const;
  void validate() const;
};

/// Per-radius objective weight V(r).
using VolumeWeights = std::function<double(std::size_t radius_index)>;

/// V(r) = pi r^2 (d=2) or 4/3 pi r^3 (d=3).
VolumeWeights default_volume_weights(const PackingScenario& scenario);

inline constexpr double kDefaultLambda = 2.0;

/// sum_v (1 - x_v) + lambda * sum_E x_v x_w with x = (I - Z)/2, constants kept.
/// Qubit k is graph node g.nodes[k].
std::pair<IsingOperator, QubitLayout> mis_hamiltonian(const PackingGraph& g,
                                                      double lambda);

/// One qubit per placement: -sum V(r) x_v + lambda * sum_{E_rs} x_v x_w.
std::pair<IsingOperator, QubitLayout> second_quantization_hamiltonian(
    const PackingGraph& g, double lambda, const VolumeWeights& weights);

struct FirstQuantizationOptions {
  double lambda = kDefaultLambda;
  /// Penalty on unusable codewords; defaults to 2 * max_v sum_n V(r_n).
  std::optional<double> invalid_penalty;
  /// Keep projectors unexpanded instead of rewriting them as Z products.
  bool keep_projectors = false;
};

/// Binary register of width ceil(log2(|R|+1)) per lattice site; codeword n
/// selects radius index n-1 (0 = empty).
std::pair<IsingOperator, QubitLayout> first_quantization_hamiltonian(
    const PackingGraph& g, const VolumeWeights& weights,
    const FirstQuantizationOptions& options = {});

/// ceil(log2(num_radii + 1)).
std::size_t register_width(std::size_t num_radii);

/// The transverse-field mixer H_M = coefficient * sum_q X_q, initial |+>^n.
struct XMixer {
  std::size_t num_qubits = 0;
  double coefficient = -1.0;
};
XMixer x_mixer(std::size_t num_qubits);

/// Exact energy of a bitstring, constant included.
double classical_energy(const IsingOperator& op, std::string_view bits);
/// Same, for a basis index (num_qubits <= 64).
double classical_energy(const IsingOperator& op, std::uint64_t basis_index);

/// All 2^n energies, constant included (num_qubits <= 30). Projector terms
/// are evaluated directly.
std::vector<double> diagonal(const IsingOperator& op);

std::string index_to_bits(std::uint64_t index, std::size_t num_qubits);
std::uint64_t bits_to_index(std::string_view bits);

}  // namespace qpack
