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

// End-to-end studies driven by JSON configs: lambda sweep, ideal and noisy
// depth sweeps, and parameter transfer from a sub-instance.

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qpack/circuit.hpp"
#include "qpack/io.hpp"
#include "qpack/noise.hpp"
#include "qpack/packing_graph.hpp"
#include "qpack/qaoa.hpp"

namespace qpack {

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  std::string name;
  /// File name -> CSV contents.
  std::map<std::string, std::string> csv;
  Json summary;
  std::vector<Assertion> assertions;

  bool passed() const;
  /// Writes every CSV plus summary.json into dir.
  void write(const std::filesystem::path& dir) const;
};

/// The graph a study runs on: a scenario, optionally restricted to lattice
/// indices.
struct InstanceSpec {
  PackingScenario scenario;
  std::optional<std::vector<std::array<int, 3>>> lattice_indices;

  PackingGraph build() const;
};

struct LambdaSweepConfig {
  InstanceSpec instance;
  std::vector<double> lambdas{0.25, 0.5, 1.0, 2.0};
  std::vector<std::size_t> depths{1, 2, 3, 4, 5};
  std::uint64_t shots = 20000;
  std::uint64_t seed = 0;
  TrainConfig train;
  /// Lambdas whose optimum must never be the modal state.
  std::vector<double> expect_never_modal;
};

struct DepthSweepConfig {
  InstanceSpec instance;
  double lambda = 0.5;
  std::vector<std::size_t> depths{1, 2, 3, 4, 5, 6};
  std::uint64_t shots = 20000;
  std::uint64_t seed = 0;
  TrainConfig train;
  std::optional<CalibrationData> calibration;
  CouplingMap coupling = garnet_coupling_map();
  double noise_scale = 1.0;
  bool idle_noise = true;
  std::uint64_t trajectories = 2000;
  std::uint64_t shots_per_trajectory = 10;
  /// Significance, in standard errors, for the trend assertions.
  double sigmas = 3.0;
  bool expect_ideal_increase = true;
  bool expect_noisy_peak = true;
};

struct ParamConcConfig {
  InstanceSpec full;
  /// Lattice indices of the sub-instance inside the full instance.
  std::vector<std::array<int, 3>> sub_indices;
  double lambda = 0.5;
  std::vector<std::size_t> depths{1, 2, 3};
  std::uint64_t shots = 20000;
  std::uint64_t seed = 0;
  TrainConfig train;
  std::size_t check_p = 3;
  double min_ratio = 0.8;
};

ExperimentReport run_lambda_sweep(const LambdaSweepConfig& cfg);
ExperimentReport run_depth_sweep(const DepthSweepConfig& cfg);
ExperimentReport run_param_conc(const ParamConcConfig& cfg);

/// Config readers; relative file references resolve against base_dir.
LambdaSweepConfig lambda_sweep_config(const Json& j, const std::filesystem::path& base_dir);
DepthSweepConfig depth_sweep_config(const Json& j, const std::filesystem::path& base_dir);
ParamConcConfig param_conc_config(const Json& j, const std::filesystem::path& base_dir);

}  // namespace qpack
