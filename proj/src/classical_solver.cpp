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

#include "qpack/classical_solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <random>

#include "qpack/parallel.hpp"

namespace qpack {
namespace {

// Fixed-size dynamic bitset; all sets in one search share the same width.
class VertexSet {
 public:
  explicit VertexSet(std::size_t n = 0) : n_(n), words_((n + 63) / 64, 0) {}

  static VertexSet full(std::size_t n) {
    VertexSet s(n);
    for (std::size_t v = 0; v < n; ++v) s.insert(v);
    return s;
  }
  void insert(std::size_t v) { words_[v / 64] |= bit(v); }
  void erase(std::size_t v) { words_[v / 64] &= ~bit(v); }
  bool contains(std::size_t v) const { return (words_[v / 64] & bit(v)) != 0; }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(),
                       [](std::uint64_t w) { return w == 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  std::size_t count_and(const VertexSet& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }
  void subtract(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  }
  void intersect(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  }
  /// Lowest member, or npos.
  std::size_t first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i])
        return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return npos;
  }
  std::size_t next(std::size_t v) const {
    ++v;
    if (v >= n_) return npos;
    std::size_t i = v / 64;
    std::uint64_t w = words_[i] & (~std::uint64_t{0} << (v % 64));
    while (true) {
      if (w) return i * 64 + static_cast<std::size_t>(std::countr_zero(w));
      if (++i >= words_.size()) return npos;
      w = words_[i];
    }
  }
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (auto v = first(); v != npos; v = next(v)) out.push_back(v);
    return out;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  static std::uint64_t bit(std::size_t v) { return std::uint64_t{1} << (v % 64); }
  std::size_t n_;
  std::vector<std::uint64_t> words_;
};

struct Deadline {
  std::optional<std::chrono::steady_clock::time_point> at;
  std::size_t ticks = 0;
  bool expired() {
    if (!at) return false;
    if ((ticks++ & 1023U) != 0) return false;  // checks on the first call too
    return std::chrono::steady_clock::now() > *at;
  }
};

struct TimedOut {};

class MisSearch {
 public:
  MisSearch(const std::vector<std::vector<std::size_t>>& adjacency,
            Deadline deadline)
      : n_(adjacency.size()), deadline_(deadline) {
    for (std::size_t v = 0; v < n_; ++v) {
      VertexSet a(n_);
      for (auto w : adjacency[v]) a.insert(w);
      adj_.push_back(a);
      VertexSet closed = a;
      closed.insert(v);
      closed_.push_back(closed);
    }
  }

  // Size of a maximum independent set; best_set_ holds one witness.
  std::size_t maximum() {
    best_ = 0;
    best_set_ = VertexSet(n_);
    VertexSet chosen(n_);
    branch(VertexSet::full(n_), chosen, 0);
    return best_;
  }

  // Every independent set of size `target`, in lexicographic order of sorted
  // vertex lists, stopping after `limit`.
  std::vector<std::vector<std::size_t>> enumerate(std::size_t target,
                                                  std::size_t limit,
                                                  bool& truncated) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> chosen;
    truncated = false;
    enumerate_rec(VertexSet::full(n_), chosen, target, limit, out, truncated);
    return out;
  }

  const VertexSet& best_set() const { return best_set_; }

 private:
  // Greedy clique partition of `cand`; its size bounds the MIS of cand.
  std::size_t clique_cover(const VertexSet& cand) const {
    std::vector<VertexSet> common;
    for (auto v = cand.first(); v != VertexSet::npos; v = cand.next(v)) {
      bool placed = false;
      for (auto& c : common) {
        if (c.contains(v)) {
          c.intersect(adj_[v]);
          placed = true;
          break;
        }
      }
      if (!placed) {
        common.push_back(adj_[v]);
        common.back().intersect(cand);
      }
    }
    return common.size();
  }

  void branch(VertexSet cand, VertexSet& chosen, std::size_t chosen_count) {
    if (deadline_.expired()) throw TimedOut{};
    // Degree <= 1 vertices can always be taken.
    std::vector<std::size_t> forced;
    while (true) {
      std::size_t pick = VertexSet::npos;
      for (auto v = cand.first(); v != VertexSet::npos; v = cand.next(v))
        if (adj_[v].count_and(cand) <= 1) {
          pick = v;
          break;
        }
      if (pick == VertexSet::npos) break;
      forced.push_back(pick);
      chosen.insert(pick);
      ++chosen_count;
      cand.subtract(closed_[pick]);
    }
    auto undo = [&] {
      for (auto v : forced) chosen.erase(v);
    };
    if (cand.empty()) {
      if (chosen_count > best_) {
        best_ = chosen_count;
        best_set_ = chosen;
      }
      undo();
      return;
    }
    if (chosen_count + clique_cover(cand) <= best_) {
      undo();
      return;
    }
    std::size_t v_max = cand.first();
    std::size_t d_max = 0;
    for (auto v = cand.first(); v != VertexSet::npos; v = cand.next(v)) {
      const auto d = adj_[v].count_and(cand);
      if (d > d_max) {
        d_max = d;
        v_max = v;
      }
    }
    {
      VertexSet with = cand;
      with.subtract(closed_[v_max]);
      chosen.insert(v_max);
      branch(with, chosen, chosen_count + 1);
      chosen.erase(v_max);
    }
    {
      VertexSet without = cand;
      without.erase(v_max);
      branch(without, chosen, chosen_count);
    }
    undo();
  }

  void enumerate_rec(const VertexSet& cand, std::vector<std::size_t>& chosen,
                     std::size_t target, std::size_t limit,
                     std::vector<std::vector<std::size_t>>& out,
                     bool& truncated) {
    if (truncated) return;
    if (deadline_.expired()) throw TimedOut{};
    if (chosen.size() == target) {
      if (out.size() >= limit) {
        truncated = true;
        return;
      }
      out.push_back(chosen);
      return;
    }
    if (cand.empty() || chosen.size() + clique_cover(cand) < target) return;
    const auto v = cand.first();
    VertexSet with = cand;
    with.subtract(closed_[v]);
    chosen.push_back(v);
    enumerate_rec(with, chosen, target, limit, out, truncated);
    chosen.pop_back();
    VertexSet without = cand;
    without.erase(v);
    enumerate_rec(without, chosen, target, limit, out, truncated);
  }

  std::size_t n_;
  Deadline deadline_;
  std::vector<VertexSet> adj_;
  std::vector<VertexSet> closed_;
  std::size_t best_ = 0;
  VertexSet best_set_;
};

Deadline make_deadline(const std::optional<double>& budget) {
  Deadline d;
  if (budget)
    d.at = std::chrono::steady_clock::now() +
           std::chrono::duration_cast<std::chrono::steady_clock::duration>(
               std::chrono::duration<double>(*budget));
  return d;
}

MisSolution make_solution(const PackingGraph& g,
                          const std::vector<std::size_t>& positions) {
  MisSolution s;
  for (auto p : positions) s.witness.push_back(g.nodes[p].id);
  std::sort(s.witness.begin(), s.witness.end());
  s.size = s.witness.size();
  s.circles = s.size + g.scenario.fixed_placements.size();
  s.density = packing_density(g, s.witness);
  return s;
}

}  // namespace

std::size_t mis_size(const std::vector<std::vector<std::size_t>>& adjacency) {
  MisSearch search(adjacency, Deadline{});
  return search.maximum();
}

MisSolution exact_mis(const PackingGraph& g, const MisOptions& options) {
  if (!g.homogeneous())
    throw InvalidArgument("exact_mis needs a single-radius graph");
  const auto adjacency = g.adjacency();
  MisSearch search(adjacency, make_deadline(options.time_budget_s));
  std::size_t best = 0;
  try {
    best = search.maximum();
  } catch (const TimedOut&) {
    throw SolverTimeout(make_solution(g, search.best_set().members()));
  }
  // The first set in lexicographic enumeration order is the tie-break witness.
  bool truncated = false;
  std::vector<std::vector<std::size_t>> optima;
  try {
    optima = search.enumerate(best, options.enumerate_all ? options.max_optima : 1,
                              truncated);
  } catch (const TimedOut&) {
    throw SolverTimeout(make_solution(g, search.best_set().members()));
  }
  MisSolution s = make_solution(g, optima.front());
  if (options.enumerate_all) {
    for (const auto& positions : optima) {
      std::vector<std::size_t> ids;
      for (auto p : positions) ids.push_back(g.nodes[p].id);
      std::sort(ids.begin(), ids.end());
      s.all_optima.push_back(std::move(ids));
    }
    std::sort(s.all_optima.begin(), s.all_optima.end());
    s.optima_truncated = truncated;
  }
  return s;
}

AnnealResult anneal_qubo(const IsingOperator& op, const AnnealSchedule& schedule,
                         std::uint64_t seed) {
  if (op.has_projectors())
    throw InvalidArgument("anneal_qubo: expand projector terms first");
  const std::size_t n = op.num_qubits;
  struct Term {
    std::vector<std::size_t> qubits;
    double w;
  };
  std::vector<Term> terms;
  for (const auto& [q, w] : op.linear) terms.push_back({{q}, w});
  for (const auto& [k, w] : op.quadratic) terms.push_back({{k.first, k.second}, w});
  for (const auto& [k, w] : op.higher) terms.push_back({k, w});
  std::vector<std::vector<std::size_t>> touching(n);
  for (std::size_t t = 0; t < terms.size(); ++t)
    for (auto q : terms[t].qubits) touching[q].push_back(t);

  const double t0 = schedule.t_initial.value_or(2.0 * op.max_abs_coefficient());
  const double t1 = schedule.t_final.value_or(0.01 * op.min_abs_coefficient());
  const std::size_t sweeps = std::max<std::size_t>(schedule.sweeps, 1);
  const std::size_t restarts = std::max<std::size_t>(schedule.restarts, 1);

  AnnealResult best{std::string(n, '0'), classical_energy(op, std::string(n, '0'))};
  if (terms.empty()) return best;

  std::vector<int> spin(n);
  for (std::size_t r = 0; r < restarts; ++r) {
    auto rng = stream_rng(seed, r);
    for (auto& s : spin) s = (rng() & 1U) ? -1 : 1;
    double energy = op.constant;
    for (const auto& t : terms) {
      int prod = 1;
      for (auto q : t.qubits) prod *= spin[q];
      energy += t.w * prod;
    }
    auto to_bits = [&] {
      std::string bits(n, '0');
      for (std::size_t q = 0; q < n; ++q) bits[q] = spin[q] < 0 ? '1' : '0';
      return bits;
    };
    if (energy < best.energy - 1e-12) best = {to_bits(), energy};
    for (std::size_t k = 0; k < sweeps; ++k) {
      const double frac =
          sweeps == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(sweeps - 1);
      const double temperature =
          (t0 > 0.0 && t1 > 0.0) ? t0 * std::pow(t1 / t0, frac) : 0.0;
      for (std::size_t q = 0; q < n; ++q) {
        double delta = 0.0;
        for (auto ti : touching[q]) {
          int prod = 1;
          for (auto r2 : terms[ti].qubits) prod *= spin[r2];
          delta -= 2.0 * terms[ti].w * prod;
        }
        const bool accept =
            delta <= 0.0 ||
            (temperature > 0.0 && uniform01(rng) < std::exp(-delta / temperature));
        if (accept) {
          spin[q] = -spin[q];
          energy += delta;
          if (energy < best.energy - 1e-12) best = {to_bits(), energy};
        }
      }
    }
  }
  // Recompute exactly to shed accumulated rounding.
  best.energy = classical_energy(op, best.bits);
  return best;
}

MisSolution anneal_mis(const PackingGraph& g, double lambda,
                       const AnnealSchedule& schedule, std::uint64_t seed) {
  if (!g.homogeneous())
    throw InvalidArgument("anneal_mis needs a single-radius graph");
  const auto [op, layout] = mis_hamiltonian(g, lambda);
  const auto res = anneal_qubo(op, schedule, seed);
  const auto adj = g.adjacency();
  std::vector<bool> in(g.size(), false);
  for (auto id : layout.decode(res.bits)) in[g.index_of(id)] = true;
  // Drop the most conflicted placement until the set is independent.
  while (true) {
    std::size_t worst = g.size();
    std::size_t worst_conflicts = 0;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!in[v]) continue;
      std::size_t c = 0;
      for (auto w : adj[v]) c += in[w] ? 1 : 0;
      if (c > worst_conflicts) {
        worst_conflicts = c;
        worst = v;
      }
    }
    if (worst == g.size()) break;
    in[worst] = false;
  }
  std::vector<std::size_t> positions;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (in[v]) positions.push_back(v);
  return make_solution(g, positions);
}

std::vector<SweepRow> spacing_sweep(const PackingScenario& scenario,
                                    const std::vector<double>& spacings,
                                    const SweepOptions& options) {
  if (!scenario.homogeneous())
    throw InvalidArgument("spacing_sweep needs a homogeneous scenario");
  std::vector<SweepRow> rows;
  for (double a : spacings) {
    PackingScenario s = scenario;
    s.spacing = a;
    s.spacing_per_radius.clear();
    const auto start = std::chrono::steady_clock::now();
    const PackingGraph g = build_graph(s);
    SweepRow row;
    row.spacing = a;
    row.nodes = g.size();
    row.edges = g.edges.size();
    if (g.size() <= options.exact_node_limit) {
      try {
        MisOptions mo;
        mo.time_budget_s = options.time_budget_s;
        const auto sol = exact_mis(g, mo);
        row.mis_size = sol.circles;
        row.density = sol.density;
        row.solver = "exact";
      } catch (const SolverTimeout& t) {
        row.mis_size = t.best_so_far().circles;
        row.density = t.best_so_far().density;
        row.solver = "timeout";
      }
    } else {
      const auto sol = anneal_mis(g, options.lambda, options.anneal, options.seed);
      row.mis_size = sol.circles;
      row.density = sol.density;
      row.solver = "anneal";
    }
    row.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qpack
