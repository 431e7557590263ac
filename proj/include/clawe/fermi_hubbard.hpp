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
#include <string>
#include <vector>

#include "clawe/circuit.hpp"
#include "clawe/state.hpp"

// Two-site Fermi-Hubbard benchmark in its dimensionless form,
//
//     H(t) = -(X0 + X1) + u(t)/2 * Z0 Z1,
//
// with u(t) the interaction in units of the hopping. Time evolution is
// digitized with a first-order product formula; each step costs two CNOT
// gates (the ZZ exponential is CNOT . RZ . CNOT). The exact propagator on a
// fine time grid serves as the reference for digitization-error studies.

namespace clawe {

class FHSchedule {
  public:
    static FHSchedule constant(double u_tilde, double t_final,
                               std::string description = "constant interaction");
    /// Piecewise-linear interpolation through (t, u) breakpoints, clamped
    /// outside their range.
    static FHSchedule piecewise_linear(std::vector<std::pair<double, double>> breakpoints,
                                       double t_final, std::string description = "piecewise");

    double u_tilde(double t) const { return u_(t); }
    double t_final() const { return t_final_; }
    const std::string& description() const { return description_; }

  private:
    FHSchedule(std::function<double(double)> u, double t_final, std::string description);

    std::function<double(double)> u_;
    double t_final_;
    std::string description_;
};

/// The three inequivalent orderings of one product-formula step: the two
/// X-rotations commute, so only the position of the ZZ block matters.
enum class StepOrdering { XXZ, XZX, ZXX };
inline constexpr int kStepOrderingCount = 3;

struct PFAConfig {
    int n_steps = 10;
    int n_t = 1;  // product-formula substeps per time-step
    std::vector<StepOrdering> orderings;  // per step; empty = XXZ everywhere

    StepOrdering ordering_for_step(int step_1based) const;
    void validate() const;
};

/// -(X0 + X1) + u/2 * Z0 Z1 as a dense 4x4 Hermitian matrix.
Matrix fh_hamiltonian(double u_tilde_value);

/// State preparation: a Hadamard on each qubit, |00> -> |++>.
Circuit initial_state_circuit();

/// One first-order step for interaction u over duration dt: two RX(-2 dt)
/// rotations and exp(-i u dt/2 ZZ) as CNOT . RZ(u dt) . CNOT.
Circuit pfa_step(double u_tilde_value, double dt, StepOrdering ordering);

/// State preparation followed by `through_step` digitized steps, the
/// interaction sampled at substep midpoints.
Circuit pfa_circuit(const FHSchedule& schedule, const PFAConfig& cfg, int through_step);

/// Time-ordered propagator on a fine grid; the result is accepted only once
/// doubling the grid moves it by less than 1e-8.
Matrix exact_evolution(const FHSchedule& schedule, double t, int fine_steps = 1000);

struct DigitizationBand {
    int step;
    double lo;
    double hi;
    double mean;
    double stddev;
};

/// Spread of the noiseless observable over randomly sampled step orderings,
/// cumulatively per step.
std::vector<DigitizationBand> digitization_error(const FHSchedule& schedule, const PFAConfig& cfg,
                                                 const Observable& observable, int n_perm_samples,
                                                 std::uint64_t rng_seed);

}  // namespace clawe
