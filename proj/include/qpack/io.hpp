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

// JSON and CSV file formats. Every reader throws FormatError on malformed
// input; writers emit keys in sorted order so output is byte-stable.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpack/circuit.hpp"
#include "qpack/classical_solver.hpp"
#include "qpack/hamiltonian.hpp"
#include "qpack/noise.hpp"
#include "qpack/packing_graph.hpp"
#include "qpack/qaoa.hpp"
#include "qpack/resources.hpp"

namespace qpack {

using Json = nlohmann::json;

inline constexpr const char* kScenarioFormat = "qpack-scenario/1";
inline constexpr const char* kGraphFormat = "qpack-graph/1";
inline constexpr const char* kHamFormat = "qpack-ham/1";
inline constexpr const char* kQaoaFormat = "qpack-qaoa/1";
inline constexpr const char* kParamsFormat = "qpack-params/1";
inline constexpr const char* kCircuitFormat = "qpack-circ/1";
inline constexpr const char* kCalibrationFormat = "qpack-cal/1";
inline constexpr const char* kCouplingFormat = "qpack-coupling/1";
inline constexpr const char* kSolutionFormat = "qpack-mis/1";

/// Histogram entries kept in result files.
inline constexpr std::size_t kHistogramTopK = 1024;

Json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string dump(const Json& j);

Json scenario_to_json(const PackingScenario& s);
PackingScenario scenario_from_json(const Json& j);

Json graph_to_json(const PackingGraph& g);
PackingGraph graph_from_json(const Json& j);

struct HamiltonianFile {
  IsingOperator op;
  QubitLayout layout;
  std::optional<double> lambda;
};
Json hamiltonian_to_json(const HamiltonianFile& h);
HamiltonianFile hamiltonian_from_json(const Json& j);

Json params_to_json(const QaoaParams& p);
/// Accepts a params object or any file carrying one under "params".
QaoaParams params_from_json(const Json& j);

/// A QAOA result in file form: histogram cut to the top-K entries with the
/// rest summarized.
struct QaoaRecord {
  QaoaResult result;
  std::uint64_t tail_entries = 0;
  std::uint64_t tail_shots = 0;
  std::optional<double> lambda;
  std::string mode = "ideal";  // "ideal" or "noisy"
  std::optional<double> std_error;
  std::optional<std::uint64_t> trajectories;
};
/// Truncates the histogram to the K most frequent entries (ties by bitstring).
QaoaRecord make_record(const QaoaResult& r, std::size_t top_k = kHistogramTopK);
Json qaoa_to_json(const QaoaRecord& r);
QaoaRecord qaoa_from_json(const Json& j);

Json circuit_to_json(const CompiledCircuit& c);
CompiledCircuit circuit_from_json(const Json& j);

Json coupling_to_json(const CouplingMap& m);
CouplingMap coupling_from_json(const Json& j);

Json calibration_to_json(const CalibrationData& c);
CalibrationData calibration_from_json(const Json& j);

Json solution_to_json(const MisSolution& s);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string depth_sweep_csv(const std::vector<DepthSweepRow>& rows);
std::string noisy_sweep_csv(const std::vector<NoisySweepRow>& rows);
std::string resources_csv(const std::vector<EmpiricalReport>& rows);

/// printf %g with `precision` significant digits ("inf" for infinity).
std::string format_number(double v, int precision = 10);

}  // namespace qpack
