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

#include "clawe/circuit.hpp"
#include "clawe/state.hpp"
#include "clawe/virtual_qpu.hpp"

// Benchmark observables. Qubit roles on the two-site model: qubit 0 carries
// the spin-up species, qubit 1 spin-down. The two-copy estimator lays the
// copies out as (0,1) = copy A and (2,3) = copy B and measures the spin-up
// pair (0,2) in the Bell basis: CNOT(0->2), H(0), computational readout.
// The singlet shows up as outcome bits (q0, q2) = (1, 1), other qubits
// marginalized, and Tr(rho_up^2) = 1 - 2 P(singlet).
//
// Entropies are second-order Renyi entropies in nats.

namespace clawe {

struct RenyiEstimate {
    double purity;   // Tr(rho_up^2), in (0, 1]
    double entropy;  // -0.5 * ln(purity)

    static RenyiEstimate from_purity(double purity);
};

/// Projector onto the doubly-occupied basis states |00> and |11>.
Observable electronic_overlap();

/// Renyi entropy of the spin-up marginal by direct partial trace.
RenyiEstimate renyi_direct(const DensityMatrix& rho_2q);

/// Two copies of `base` plus the Bell-basis stage on the spin-up pair.
Circuit bba_circuit(const Circuit& base_2q);

/// Purity estimate 1 - 2 P(singlet) from 4-qubit counts. Can leave (0, 1]
/// under noise or after mitigation; returned unclipped.
double bba_purity_from_counts(const ShotRecord& rec_4q);

/// Density-level singlet probability of a measured 4-qubit output state.
double bba_singlet_probability(const DensityMatrix& rho_4q);

/// Marginal projector onto (q0, q2) = (1, 1) on four qubits; the observable
/// the two-copy estimator actually measures.
Observable bba_singlet_projector();

/// Count weight for the singlet outcome pattern.
double singlet_weight(const std::string& bits);

/// Count weight of the electronic overlap (1 on "00" and "11").
double electronic_overlap_weight(const std::string& bits);

/// Clamp a raw purity estimate into (0, 1] for entropy evaluation.
double clip_purity(double purity);

}  // namespace clawe
