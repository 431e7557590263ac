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

#include <optional>
#include <vector>

#include "clawe/observables.hpp"
#include "clawe/virtual_qpu.hpp"

// White-noise extrapolation and its calibration.
//
// Under a global depolarizing backend of strength eps, a rescaled observable
// Omega = O - Omega_ITS decays as <Omega_noisy> = (1-eps)^chi <Omega_ideal>,
// where chi counts entangling gates and Omega_ITS is the observable's value
// in the maximally mixed state. Mitigation inverts that decay with a
// calibrated strength:
//
//   calibration:  C = <Omega_noisy^cal> / <Omega_ideal^cal>,
//                 eps_s = 1 - C^(1/chi_cal)
//   inversion  :  <Omega_mapped> = (1-eps_s)^(-chi) <Omega_noisy>
//
// Calibration circuits are motion reversals U^dag U, whose ideal output is
// the input state, so the calibrator's ideal value is known by construction.
// Variant I reverses powers of the whole target; Variant II reverses each
// fragment of a partitioned target on top of a replayed memory window, and
// inverts with one strength per fragment.
//
// Inversion amplifies both signal and statistical error by (1-eps)^(-chi);
// it is trustworthy only up to the gate cutoff chi_g = 1/eps and, for a
// register of n qubits, the perturbative depth (n/2) chi_g.

namespace clawe {

struct RescaledObservable {
    double raw_value;
    double its_value;
    double rescaled;  // raw_value - its_value
};

RescaledObservable rescale(double raw, double its);

/// Ratio of noisy to ideal rescaled calibrator values. Throws when the
/// ideal value is within `delta` of zero (the calibrator carries no signal).
double contamination(double noisy_rescaled, double ideal_rescaled, double delta = 1e-6);

/// eps_s = 1 - C^(1/chi_c). C <= 0 throws (noise floor reached); C > 1
/// returns a negative strength, a statistical fluctuation the caller is
/// expected to flag.
double secondary_epsilon(double contamination_value, int chi_c);

/// (1-eps_s)^(-chi) * omega_n.
double ideal_map(double omega_n, double eps_s, int chi);

struct EpsilonSegment {
    double epsilon;
    int chi;
};

/// Piecewise inversion prod_i (1-eps_i)^(-chi_i) * omega_n.
double ideal_map_vector(double omega_n, const std::vector<EpsilonSegment>& segments);

/// Depth beyond which inversion is unstable, chi_g = 1/eps.
double gate_cutoff(double eps_g);

/// Perturbative depth (n/2) / eps for an n-qubit register.
double pnr_depth(int n_qubits, double eps_g);

// --- execution context -----------------------------------------------------

struct ExecutionContext {
    NoiseModel noise = IdealNoise{};
    long long n_shots = 0;  // 0 = exact density-level values
    std::uint64_t seed = 0;
    // Randomized-compiling instances averaged per circuit (shots split
    // evenly across instances); 0 disables noise tailoring.
    int rco_randomizations = 0;
};

/// Measure a computational-basis-diagonal observable after running `c` on
/// `rho0` under the context's backend. Returns the estimate and, in shot
/// mode, the (merged) record it came from.
struct Measurement {
    double value;
    std::optional<ShotRecord> record;
};
Measurement measure_observable(const Circuit& c, const DensityMatrix& rho0,
                               const Observable& obs, const ExecutionContext& ctx,
                               std::uint64_t salt);

/// Batched form; shot-mode executions are dispatched through the job
/// interface in job-sized chunks.
std::vector<Measurement> measure_observables(const std::vector<Circuit>& circuits,
                                             const DensityMatrix& rho0, const Observable& obs,
                                             const ExecutionContext& ctx, std::uint64_t salt);

// --- calibration -----------------------------------------------------------

enum class CalibrationVariant { I, II };

struct CalibrationPoint {
    int index = 0;    // k for Variant I, fragment number for Variant II
    int chi_c = 0;    // depth of the calibration circuit
    int chi_fragment = 0;  // Variant II: depth of the calibrated fragment
    int window_used = 0;   // Variant II: memory-window length actually used
    double contamination = 0.0;
    double epsilon_s = 0.0;
    double ideal_rescaled = 0.0;  // contamination denominator
    bool dropped = false;         // contamination <= 0, point unusable
    bool uncalibratable = false;  // Variant II: every window's baseline degenerate
    bool fluctuation_warning = false;  // contamination > 1
    std::optional<ShotRecord> motion_record;
    std::optional<ShotRecord> baseline_record;  // Variant II only
};

struct CalibrationRecord {
    CalibrationVariant variant = CalibrationVariant::I;
    std::vector<CalibrationPoint> points;
    std::vector<double> aggregate;  // size 1 (mean) for I, per fragment for II
    std::uint64_t seed = 0;
    long long n_shots = 0;

    /// Variant I aggregate strength.
    double epsilon_scalar() const;
    /// Variant II (eps_i, chi_i) segments covering the full target.
    std::vector<EpsilonSegment> segments() const;
    /// Rows `variant,point_index,chi_c,contamination,epsilon_s` plus header.
    std::string to_csv() const;
};

/// Motion reversal in powers k = 1..n_c of the target; one strength estimate
/// per power, aggregated as the mean. Points with non-positive contamination
/// are dropped; if every point drops, throws.
CalibrationRecord variant1_calibrate(const Circuit& target, const ExecutionContext& ctx,
                                     int n_c, const DensityMatrix& calibration_state,
                                     const Observable& calibration_observable);

/// Per-fragment motion reversal on top of a replayed memory window of up to
/// `window_w` predecessor fragments; yields one strength per fragment.
CalibrationRecord variant2_calibrate(const std::vector<Circuit>& fragments, int window_w,
                                     const ExecutionContext& ctx,
                                     const DensityMatrix& calibration_state,
                                     const Observable& calibration_observable);

// --- zero-noise extrapolation ----------------------------------------------

inline constexpr int kQcnaRounds = 4;  // noise scale factors 1, 3, 5, 7

/// The noise-amplified variants of a circuit, (scale, circuit) per round.
std::vector<std::pair<int, Circuit>> qcna_variants(const Circuit& c, int rounds = kQcnaRounds);

/// Least-squares polynomial of the given order through (scale, value)
/// points, evaluated at scale 0.
double zne_poly(const std::vector<double>& scales, const std::vector<double>& values, int order);

/// Richardson extrapolation to scale 0; needs exactly order+1 points and is
/// exact for polynomials up to the given order.
double zne_richardson(const std::vector<double>& scales, const std::vector<double>& values,
                      int order);

// --- mitigated results -------------------------------------------------------

enum class MitigationMethod { ClaweI, ClaweII, ZnePoly, ZneRichardson };

struct MitigatedEstimate {
    double value = 0.0;      // on the raw observable scale
    double std_error = 0.0;
    MitigationMethod method = MitigationMethod::ClaweI;
    bool within_pnr = true;
    bool beyond_cutoff = false;
};

/// Assemble an estimate and its viability flags from a mapped rescaled value
/// and the calibrated strength (eps_ref <= 0 means a noiseless reference).
MitigatedEstimate make_mitigated_estimate(double mapped_rescaled, double its, double std_error,
                                          MitigationMethod method, int chi, int n_qubits,
                                          double eps_ref);

}  // namespace clawe
