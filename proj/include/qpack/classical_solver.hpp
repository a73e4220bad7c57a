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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpack/error.hpp"
#include "qpack/hamiltonian.hpp"
#include "qpack/packing_graph.hpp"

namespace qpack {

struct MisOptions {
  /// Wall-clock budget in seconds; unlimited when empty.
  std::optional<double> time_budget_s;
  /// Also collect every maximum independent set (up to max_optima).
  bool enumerate_all = false;
  std::size_t max_optima = 1 << 16;
};

struct MisSolution {
  /// Lexicographically smallest maximum independent set, as sorted node ids.
  std::vector<std::size_t> witness;
  /// Number of free graph nodes selected.
  std::size_t size = 0;
  /// Circles in the packing: size plus the scenario's fixed placements.
  std::size_t circles = 0;
  double density = 0.0;
  /// Filled only with MisOptions::enumerate_all; each sorted, list sorted.
  std::vector<std::vector<std::size_t>> all_optima;
  bool optima_truncated = false;
};

/// Raised when the time budget runs out; carries the best set found so far.
class SolverTimeout : public Error {
 public:
  explicit SolverTimeout(MisSolution best)
      : Error("maximum independent set search timed out"),
        best_(std::move(best)) {}
  const MisSolution& best_so_far() const noexcept { return best_; }

 private:
  MisSolution best_;
};

/// Exact maximum independent set by branch and bound (max-degree branching,
/// greedy clique-cover bound). Requires a homogeneous graph.
MisSolution exact_mis(const PackingGraph& g, const MisOptions& options = {});

/// Plain exact MIS size of an arbitrary graph given by adjacency lists.
std::size_t mis_size(const std::vector<std::vector<std::size_t>>& adjacency);

struct AnnealSchedule {
  std::size_t sweeps = 1000;
  std::size_t restarts = 1;
  /// Defaults: 2 * max|coeff| down to 0.01 * min nonzero |coeff|.
  std::optional<double> t_initial;
  std::optional<double> t_final;
};

struct AnnealResult {
  std::string bits;
  double energy = 0.0;
};

/// Single-spin-flip Metropolis annealing with a geometric schedule; returns the
/// best state seen over all restarts. Restart k uses seed stream (seed, k).
AnnealResult anneal_qubo(const IsingOperator& op, const AnnealSchedule& schedule,
                         std::uint64_t seed);

/// Anneals mis_hamiltonian(g, lambda), then repairs the result into an
/// independent set by repeatedly dropping the most conflicted placement.
/// Heuristic: the size is a lower bound on the MIS.
MisSolution anneal_mis(const PackingGraph& g, double lambda,
                       const AnnealSchedule& schedule, std::uint64_t seed);

struct SweepOptions {
  /// Exact search is attempted for graphs up to this many nodes.
  std::size_t exact_node_limit = 160;
  std::optional<double> time_budget_s = 60.0;
  AnnealSchedule anneal{1000, 10, {}, {}};
  std::uint64_t seed = 0;
  double lambda = kDefaultLambda;
};

struct SweepRow {
  double spacing = 0.0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t mis_size = 0;  // circles, fixed placements included
  double density = 0.0;
  std::string solver;  // "exact", "anneal" or "timeout"
  double seconds = 0.0;
};

/// For each spacing: rebuild the graph, solve it, report size and density.
std::vector<SweepRow> spacing_sweep(const PackingScenario& scenario,
                                    const std::vector<double>& spacings,
                                    const SweepOptions& options = {});

}  // namespace qpack
