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

#include "qpack/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "qpack/error.hpp"

namespace qpack {
namespace {

constexpr double kPruneTol = 1e-12;

template <typename Map, typename Key>
void accumulate(Map& m, const Key& key, double w) {
  auto [it, inserted] = m.try_emplace(key, 0.0);
  it->second += w;
  if (std::abs(it->second) <= kPruneTol) m.erase(it);
}

std::uint64_t mask_of(const std::vector<std::size_t>& qubits) {
  std::uint64_t m = 0;
  for (auto q : qubits) m |= std::uint64_t{1} << q;
  return m;
}

// prod_k (I + s_k Z_k) / 2 with s_k = +1 for bit 0 and -1 for bit 1.
void add_expanded_projector(IsingOperator& op,
                            const std::vector<std::size_t>& qubits,
                            const std::vector<std::uint8_t>& bits, double w) {
  const std::size_t k = qubits.size();
  const double scale = w / static_cast<double>(std::uint64_t{1} << k);
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << k); ++subset) {
    std::vector<std::size_t> term;
    double sign = 1.0;
    for (std::size_t b = 0; b < k; ++b) {
      if ((subset >> b) & 1U) {
        term.push_back(qubits[b]);
        if (bits[b]) sign = -sign;
      }
    }
    op.add_z_product(std::move(term), sign * scale);
  }
}

// w * prod x_q, x = (I - Z)/2.
void add_indicator_product(IsingOperator& op,
                           const std::vector<std::size_t>& qubits, double w) {
  add_expanded_projector(op, qubits, std::vector<std::uint8_t>(qubits.size(), 1),
                         w);
}

int z_sign(std::string_view bits, std::size_t q) {
  return bits[q] == '1' ? -1 : 1;
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be > 0");
}

}  // namespace

void IsingOperator::add_z_product(std::vector<std::size_t> qubits, double w) {
  std::sort(qubits.begin(), qubits.end());
  std::vector<std::size_t> reduced;
  for (std::size_t i = 0; i < qubits.size();) {
    std::size_t j = i;
    while (j < qubits.size() && qubits[j] == qubits[i]) ++j;
    if ((j - i) % 2 == 1) reduced.push_back(qubits[i]);
    i = j;
  }
  for (auto q : reduced) num_qubits = std::max(num_qubits, q + 1);
  switch (reduced.size()) {
    case 0:
      constant += w;
      break;
    case 1:
      accumulate(linear, reduced[0], w);
      break;
    case 2:
      accumulate(quadratic, std::pair{reduced[0], reduced[1]}, w);
      break;
    default:
      accumulate(higher, reduced, w);
  }
}

void IsingOperator::add_projector(Projector p) {
  if (p.qubits.size() != p.bits.size())
    throw InvalidArgument("projector qubit/bit length mismatch");
  for (auto q : p.qubits) num_qubits = std::max(num_qubits, q + 1);
  if (p.weight != 0.0) projectors.push_back(std::move(p));
}

double IsingOperator::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [q, w] : linear) m = std::max(m, std::abs(w));
  for (const auto& [k, w] : quadratic) m = std::max(m, std::abs(w));
  for (const auto& [k, w] : higher) m = std::max(m, std::abs(w));
  for (const auto& p : projectors) m = std::max(m, std::abs(p.weight));
  return m;
}

double IsingOperator::min_abs_coefficient() const {
  double m = std::numeric_limits<double>::infinity();
  auto visit = [&](double w) {
    if (w != 0.0) m = std::min(m, std::abs(w));
  };
  for (const auto& [q, w] : linear) visit(w);
  for (const auto& [k, w] : quadratic) visit(w);
  for (const auto& [k, w] : higher) visit(w);
  for (const auto& p : projectors) visit(p.weight);
  return std::isinf(m) ? 0.0 : m;
}

std::size_t IsingOperator::degree() const {
  std::size_t d = linear.empty() ? 0 : 1;
  if (!quadratic.empty()) d = 2;
  for (const auto& [k, w] : higher) d = std::max(d, k.size());
  for (const auto& p : projectors) d = std::max(d, p.qubits.size());
  return d;
}

void IsingOperator::validate() const {
  for (const auto& [q, w] : linear) {
    if (q >= num_qubits) throw ValidationError("linear", "qubit out of range");
    if (w == 0.0) throw ValidationError("linear", "zero-weight term");
  }
  for (const auto& [k, w] : quadratic) {
    if (!(k.first < k.second))
      throw ValidationError("quadratic", "keys must satisfy i < j");
    if (k.second >= num_qubits)
      throw ValidationError("quadratic", "qubit out of range");
    if (w == 0.0) throw ValidationError("quadratic", "zero-weight term");
  }
  for (const auto& [k, w] : higher) {
    if (k.size() < 3) throw ValidationError("higher", "degree below 3");
    if (!std::is_sorted(k.begin(), k.end()) ||
        std::adjacent_find(k.begin(), k.end()) != k.end())
      throw ValidationError("higher", "qubits must be strictly increasing");
    if (k.back() >= num_qubits)
      throw ValidationError("higher", "qubit out of range");
    if (w == 0.0) throw ValidationError("higher", "zero-weight term");
  }
  for (const auto& p : projectors) {
    if (p.qubits.size() != p.bits.size())
      throw ValidationError("projectors", "qubit/bit length mismatch");
    for (auto q : p.qubits)
      if (q >= num_qubits)
        throw ValidationError("projectors", "qubit out of range");
  }
}

IsingOperator expand_projectors(const IsingOperator& op) {
  IsingOperator out = op;
  out.projectors.clear();
  for (const auto& p : op.projectors)
    add_expanded_projector(out, p.qubits, p.bits, p.weight);
  out.num_qubits = op.num_qubits;
  return out;
}

const char* to_string(Formulation f) {
  switch (f) {
    case Formulation::mis:
      return "mis";
    case Formulation::first_quantization:
      return "first_quantization";
    case Formulation::second_quantization:
      return "second_quantization";
  }
  return "?";
}

Formulation formulation_from_string(std::string_view s) {
  if (s == "mis") return Formulation::mis;
  if (s == "first_quantization" || s == "first")
    return Formulation::first_quantization;
  if (s == "second_quantization" || s == "second")
    return Formulation::second_quantization;
  throw InvalidArgument("unknown formulation '" + std::string(s) + "'");
}

std::vector<std::size_t> QubitLayout::decode(std::string_view bits) const {
  if (bits.size() != slots.size())
    throw InvalidArgument("bitstring length does not match layout");
  std::vector<std::size_t> ids;
  if (formulation != Formulation::first_quantization) {
    for (std::size_t q = 0; q < bits.size(); ++q)
      if (bits[q] == '1') ids.push_back(slots[q].node_id);
  } else {
    for (const auto& site : sites) {
      std::size_t codeword = 0;
      for (std::size_t k = 0; k < site.qubits.size(); ++k)
        if (bits[site.qubits[k]] == '1') codeword |= std::size_t{1} << k;
      if (auto it = site.codeword_node.find(codeword);
          it != site.codeword_node.end())
        ids.push_back(it->second);
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string QubitLayout::encode(const std::vector<std::size_t>& node_ids) const {
  std::string bits(slots.size(), '0');
  if (formulation != Formulation::first_quantization) {
    for (auto id : node_ids) {
      bool found = false;
      for (std::size_t q = 0; q < slots.size(); ++q)
        if (slots[q].node_id == id) {
          bits[q] = '1';
          found = true;
        }
      if (!found) throw InvalidArgument("node id not in layout");
    }
    return bits;
  }
  for (auto id : node_ids) {
    bool found = false;
    for (const auto& site : sites)
      for (const auto& [codeword, node] : site.codeword_node)
        if (node == id) {
          for (std::size_t k = 0; k < site.qubits.size(); ++k)
            bits[site.qubits[k]] = ((codeword >> k) & 1U) ? '1' : '0';
          found = true;
        }
    if (!found) throw InvalidArgument("node id not in layout");
  }
  return bits;
}

void QubitLayout::validate() const {
  if (formulation == Formulation::first_quantization) {
    std::vector<bool> seen(slots.size(), false);
    for (const auto& site : sites)
      for (auto q : site.qubits) {
        if (q >= slots.size() || seen[q])
          throw ValidationError("layout", "registers must partition qubits");
        seen[q] = true;
      }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw ValidationError("layout", "unassigned qubit");
    return;
  }
  std::vector<std::size_t> ids;
  for (const auto& s : slots) ids.push_back(s.node_id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw ValidationError("layout", "node mapped to two qubits");
}

VolumeWeights default_volume_weights(const PackingScenario& scenario) {
  return [dim = scenario.dimension, radii = scenario.radii](std::size_t i) {
    return sphere_measure(dim, radii.at(i));
  };
}

std::pair<IsingOperator, QubitLayout> mis_hamiltonian(const PackingGraph& g,
                                                      double lambda) {
  check_lambda(lambda);
  if (!g.homogeneous())
    throw InvalidArgument("mis_hamiltonian needs a single-radius graph");
  IsingOperator op;
  op.num_qubits = g.size();
  QubitLayout layout;
  layout.formulation = Formulation::mis;
  for (std::size_t q = 0; q < g.size(); ++q) {
    layout.slots.push_back({g.nodes[q].id, 0});
    // 1 - x_v = (I + Z_v)/2
    op.add_z_product({}, 0.5);
    op.add_z_product({q}, 0.5);
  }
  for (const auto& e : g.edges)
    add_indicator_product(op, {g.index_of(e.u), g.index_of(e.v)}, lambda);
  return {op, layout};
}

std::pair<IsingOperator, QubitLayout> second_quantization_hamiltonian(
    const PackingGraph& g, double lambda, const VolumeWeights& weights) {
  check_lambda(lambda);
  if (!weights) throw InvalidArgument("missing volume weights");
  IsingOperator op;
  op.num_qubits = g.size();
  QubitLayout layout;
  layout.formulation = Formulation::second_quantization;
  for (std::size_t q = 0; q < g.size(); ++q) {
    layout.slots.push_back({g.nodes[q].id, 0});
    const double v = weights(g.nodes[q].radius_index);
    if (!std::isfinite(v))
      throw InvalidArgument("missing weight for radius index " +
                            std::to_string(g.nodes[q].radius_index));
    add_indicator_product(op, {q}, -v);
  }
  for (const auto& e : g.edges)
    add_indicator_product(op, {g.index_of(e.u), g.index_of(e.v)}, lambda);
  return {op, layout};
}

std::size_t register_width(std::size_t num_radii) {
  std::size_t w = 0;
  while ((std::size_t{1} << w) < num_radii + 1) ++w;
  return w;
}

std::pair<IsingOperator, QubitLayout> first_quantization_hamiltonian(
    const PackingGraph& g, const VolumeWeights& weights,
    const FirstQuantizationOptions& options) {
  check_lambda(options.lambda);
  if (!weights) throw InvalidArgument("missing volume weights");
  const std::size_t s = g.scenario.radii.size();
  if (s >= (std::size_t{1} << 16))
    throw InvalidArgument("register width overflow: too many radii");
  const std::size_t width = register_width(s);

  QubitLayout layout;
  layout.formulation = Formulation::first_quantization;
  layout.register_width = width;
  // Nodes are sorted by coordinate, so placements sharing a site are adjacent.
  std::vector<std::size_t> site_of_node(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& n = g.nodes[i];
    const bool new_site =
        layout.sites.empty() ||
        std::hypot(layout.sites.back().coord[0] - n.coord[0],
                   layout.sites.back().coord[1] - n.coord[1],
                   layout.sites.back().coord[2] - n.coord[2]) > kGeometryEps;
    if (new_site) {
      SiteRegister site;
      site.coord = n.coord;
      for (std::size_t k = 0; k < width; ++k) {
        site.qubits.push_back(layout.slots.size());
        layout.slots.push_back({layout.sites.size(), k});
      }
      layout.sites.push_back(std::move(site));
    }
    layout.sites.back().codeword_node[n.radius_index + 1] = n.id;
    site_of_node[i] = layout.sites.size() - 1;
  }

  double penalty = 0.0;
  if (options.invalid_penalty) {
    penalty = *options.invalid_penalty;
    if (!(penalty > 0.0)) throw InvalidArgument("invalid penalty must be > 0");
  } else {
    for (const auto& site : layout.sites) {
      double total = 0.0;
      for (const auto& [codeword, node] : site.codeword_node)
        total += weights(codeword - 1);
      penalty = std::max(penalty, 2.0 * total);
    }
    if (penalty == 0.0) penalty = 1.0;
  }

  IsingOperator op;
  op.num_qubits = layout.slots.size();
  auto codeword_bits = [width](std::size_t codeword) {
    std::vector<std::uint8_t> bits(width);
    for (std::size_t k = 0; k < width; ++k) bits[k] = (codeword >> k) & 1U;
    return bits;
  };
  auto emit = [&](Projector p) {
    if (options.keep_projectors)
      op.add_projector(std::move(p));
    else
      add_expanded_projector(op, p.qubits, p.bits, p.weight);
  };

  for (const auto& site : layout.sites) {
    for (std::size_t codeword = 1; codeword < (std::size_t{1} << width);
         ++codeword) {
      if (auto it = site.codeword_node.find(codeword);
          it != site.codeword_node.end()) {
        const double v = weights(codeword - 1);
        if (!std::isfinite(v))
          throw InvalidArgument("missing weight for radius index " +
                                std::to_string(codeword - 1));
        emit({site.qubits, codeword_bits(codeword), -v});
      } else {
        emit({site.qubits, codeword_bits(codeword), penalty});
      }
    }
  }
  for (const auto& e : g.edges) {
    const auto iu = g.index_of(e.u);
    const auto iv = g.index_of(e.v);
    const auto su = site_of_node[iu];
    const auto sv = site_of_node[iv];
    if (su == sv) continue;  // one codeword per register already excludes it
    Projector p;
    p.qubits = layout.sites[su].qubits;
    p.bits = codeword_bits(g.nodes[iu].radius_index + 1);
    const auto& q2 = layout.sites[sv].qubits;
    const auto b2 = codeword_bits(g.nodes[iv].radius_index + 1);
    p.qubits.insert(p.qubits.end(), q2.begin(), q2.end());
    p.bits.insert(p.bits.end(), b2.begin(), b2.end());
    p.weight = options.lambda;
    emit(std::move(p));
  }
  op.num_qubits = layout.slots.size();
  return {op, layout};
}

XMixer x_mixer(std::size_t num_qubits) {
  if (num_qubits < 1) throw InvalidArgument("mixer needs at least one qubit");
  return {num_qubits, -1.0};
}

double classical_energy(const IsingOperator& op, std::string_view bits) {
  if (bits.size() != op.num_qubits)
    throw InvalidArgument("bitstring length " + std::to_string(bits.size()) +
                          " does not match " + std::to_string(op.num_qubits) +
                          " qubits");
  for (char c : bits)
    if (c != '0' && c != '1') throw InvalidArgument("bitstring must be 0/1");
  double e = op.constant;
  for (const auto& [q, w] : op.linear) e += w * z_sign(bits, q);
  for (const auto& [k, w] : op.quadratic)
    e += w * z_sign(bits, k.first) * z_sign(bits, k.second);
  for (const auto& [k, w] : op.higher) {
    int s = 1;
    for (auto q : k) s *= z_sign(bits, q);
    e += w * s;
  }
  for (const auto& p : op.projectors) {
    bool match = true;
    for (std::size_t i = 0; i < p.qubits.size() && match; ++i)
      match = (bits[p.qubits[i]] == '1') == (p.bits[i] != 0);
    if (match) e += p.weight;
  }
  return e;
}

double classical_energy(const IsingOperator& op, std::uint64_t basis_index) {
  if (op.num_qubits > 64) throw InvalidArgument("basis index needs <= 64 qubits");
  return classical_energy(op, index_to_bits(basis_index, op.num_qubits));
}

std::vector<double> diagonal(const IsingOperator& op) {
  if (op.num_qubits > 30)
    throw QubitCapExceeded(op.num_qubits, 30);
  const std::uint64_t dim = std::uint64_t{1} << op.num_qubits;
  std::vector<double> e(dim, op.constant);
  auto add_parity_term = [&](std::uint64_t mask, double w) {
    for (std::uint64_t x = 0; x < dim; ++x)
      e[x] += (std::popcount(x & mask) & 1) ? -w : w;
  };
  for (const auto& [q, w] : op.linear) add_parity_term(std::uint64_t{1} << q, w);
  for (const auto& [k, w] : op.quadratic)
    add_parity_term((std::uint64_t{1} << k.first) | (std::uint64_t{1} << k.second),
                    w);
  for (const auto& [k, w] : op.higher) add_parity_term(mask_of(k), w);
  for (const auto& p : op.projectors) {
    const std::uint64_t mask = mask_of(p.qubits);
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < p.qubits.size(); ++i)
      if (p.bits[i]) value |= std::uint64_t{1} << p.qubits[i];
    for (std::uint64_t x = 0; x < dim; ++x)
      if ((x & mask) == value) e[x] += p.weight;
  }
  return e;
}

std::string index_to_bits(std::uint64_t index, std::size_t num_qubits) {
  std::string bits(num_qubits, '0');
  for (std::size_t q = 0; q < num_qubits; ++q)
    if ((index >> q) & 1U) bits[q] = '1';
  return bits;
}

std::uint64_t bits_to_index(std::string_view bits) {
  if (bits.size() > 64) throw InvalidArgument("bitstring longer than 64");
  std::uint64_t x = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '1')
      x |= std::uint64_t{1} << q;
    else if (bits[q] != '0')
      throw InvalidArgument("bitstring must be 0/1");
  }
  return x;
}

}  // namespace qpack
