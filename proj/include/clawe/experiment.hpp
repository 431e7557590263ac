// Copyright 2026 The clawe-lab Authors
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

#include <string>
#include <vector>

#include "clawe/fermi_hubbard.hpp"
#include "clawe/mitigation.hpp"

// Batch experiment driver. A config file (line-oriented `key = value` under
// [section] headers, see README) selects one of five experiment kinds and
// fully seeds it; rerunning the same config reproduces the output CSV
// bit for bit.
//
//   overlap       - the 10-step double-occupancy benchmark with every
//                   mitigation column
//   renyi         - the two-copy entropy benchmark, same columns plus
//                   unclipped/clipped purity companions
//   calibrate-v1  - whole-target reversal calibration trace
//   calibrate-v2  - per-fragment calibration trace
//   zne           - the per-scale amplification trace behind the ZNE columns

namespace clawe {

struct ExperimentConfig {
    enum class Kind { Overlap, Renyi, CalibrateV1, CalibrateV2, Zne };
    enum class Benchmark { Overlap, Renyi };
    enum class NoiseKind { Ideal, GlobalConstant, GlobalVector, LocalAfterCnot };

    // [experiment]
    Kind kind = Kind::Overlap;
    Benchmark benchmark = Benchmark::Overlap;  // target of calibrate-*/zne kinds
    std::uint64_t seed = 20260809;
    long long n_shots = 8192;
    bool shot_free = false;
    int n_resamples = 1000;
    std::string out_path;

    // [schedule]
    bool u_constant = true;
    double u_value = 2.0;
    std::vector<std::pair<double, double>> u_breakpoints;
    double t_final = 2.0;
    int n_steps = 10;
    int n_t = 1;

    // [noise]
    NoiseKind noise_kind = NoiseKind::Ideal;
    double epsilon = 0.02;                              // global_constant
    std::vector<std::pair<int, double>> epsilon_segments;  // global_vector
    double local_p = 0.01;                              // local_after_cnot
    double local_phi = 0.0;
    int rco_randomizations = 0;

    // [mitigation]
    int n_c = 3;
    int window_w = 1;  // -1 = every predecessor
    bool fragments_per_step = true;
    std::vector<int> fragment_boundaries;  // explicit gate indices when not per-step
    int qcna_rounds = 4;
    int digitization_samples = 24;

    FHSchedule schedule() const;
    NoiseModel noise() const;
    ExecutionContext execution_context() const;
    void validate() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

struct ResultTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    bool operator==(const ResultTable&) const = default;
};

/// %.17g rendering used for every numeric cell.
std::string format_double(double v);

ResultTable run_experiment(const ExperimentConfig& cfg);

/// The full-depth target circuit of the configured benchmark, entangling
/// slots labeled.
Circuit benchmark_target_circuit(const ExperimentConfig& cfg);

std::string table_to_csv(const ResultTable& table);
ResultTable parse_csv_text(const std::string& text);

/// Write header + rows; parent directory must exist.
void emit_csv(const ResultTable& table, const std::string& path);
ResultTable parse_csv_file(const std::string& path);

}  // namespace clawe
