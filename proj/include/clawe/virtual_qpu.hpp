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

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "clawe/channels.hpp"
#include "clawe/circuit.hpp"

// Noisy execution backend. Single-qubit gates are ideal; noise is attached
// to entangling gates only, firing right after each CNOT:
//
//   Ideal          - nothing.
//   GlobalConstant - full-register depolarizing of fixed strength.
//   GlobalVector   - full-register depolarizing whose strength is looked up
//                    per entangling gate, by the gate's noise_slot label when
//                    set and by execution order otherwise.
//   LocalAfterCnot - a CPTP channel on the gate's qubit pair followed by a
//                    coherent ZZ over-rotation; the non-white test case.
//
// State preparation and measurement are ideal.

namespace clawe {

struct IdealNoise {};

struct GlobalConstantNoise {
    double epsilon = 0.0;
};

struct GlobalVectorNoise {
    // epsilon_per_gate[i] dresses the entangling gate with slot/ordinal i+1.
    std::vector<double> epsilon_per_gate;

    /// Expand (gate_count, epsilon) segments into the per-gate table.
    static GlobalVectorNoise from_segments(const std::vector<std::pair<int, double>>& segments);
    /// n_gates entries linearly interpolated between two strengths.
    static GlobalVectorNoise linear_drift(double eps_first, double eps_last, int n_gates);
};

struct LocalAfterCnotNoise {
    KrausChannel channel;         // two-qubit CPTP channel on the gate pair
    double coherent_angle = 0.0;  // exp(-i angle/2 ZZ) over-rotation
};

using NoiseModel = std::variant<IdealNoise, GlobalConstantNoise, GlobalVectorNoise,
                                LocalAfterCnotNoise>;

/// Throws unless all strengths are in [0,1] and any local channel is CPTP.
void validate_noise(const NoiseModel& noise);

struct ShotRecord {
    std::map<std::string, long long> counts;  // bitstring (qubit 0 first) -> occurrences
    long long n_shots = 0;

    /// Rows of `bitstring,count`.
    std::string to_csv() const;
    static ShotRecord from_csv(const std::string& text);
};

/// Apply the circuit with the noise model from rho0.
DensityMatrix evolve(const Circuit& c, const NoiseModel& noise, const DensityMatrix& rho0);

/// The same execution as a linear map on density matrices.
Superoperator circuit_superoperator(const Circuit& c, const NoiseModel& noise);

/// Apply the (noiseless) basis-change circuit, then draw computational-basis
/// outcomes from the diagonal. Deterministic under a fixed seed.
ShotRecord sample_shots(const DensityMatrix& rho, const Circuit& pre_measurement,
                        long long n_shots, std::uint64_t rng_seed);
ShotRecord sample_shots(const DensityMatrix& rho, long long n_shots, std::uint64_t rng_seed);

/// Empirical mean sum_b weight(b) counts(b) / n_shots.
double estimate_from_counts(const ShotRecord& rec,
                            const std::function<double(const std::string&)>& weight);

inline constexpr int kMaxCircuitsPerJob = 75;

/// Execute up to kMaxCircuitsPerJob circuits against the same backend; each
/// circuit runs with a seed derived from (rng_seed, its index), so records
/// do not depend on execution order.
std::vector<ShotRecord> run_job(const std::vector<Circuit>& circuits, const NoiseModel& noise,
                                const DensityMatrix& rho0, long long n_shots,
                                std::uint64_t rng_seed);

}  // namespace clawe
