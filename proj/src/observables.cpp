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

#include "clawe/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clawe {

RenyiEstimate RenyiEstimate::from_purity(double purity) {
    if (!(purity > 0.0)) {
        throw std::domain_error("RenyiEstimate: purity " + std::to_string(purity) +
                                " is not positive");
    }
    return {purity, -0.5 * std::log(purity)};
}

Observable electronic_overlap() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1.0;
    m(3, 3) = 1.0;
    return Observable(2, std::move(m), "E_o");
}

RenyiEstimate renyi_direct(const DensityMatrix& rho_2q) {
    if (rho_2q.n_qubits() != 2) {
        throw std::invalid_argument("renyi_direct: expected a 2-qubit state");
    }
    const DensityMatrix rho_up = partial_trace(rho_2q, {1});
    return RenyiEstimate::from_purity(rho_up.purity());
}

Circuit bba_circuit(const Circuit& base_2q) {
    if (base_2q.n_qubits != 2) {
        throw std::invalid_argument("bba_circuit: base must be a 2-qubit circuit");
    }
    Circuit out;
    out.n_qubits = 4;
    out.gates.reserve(base_2q.gates.size() * 2 + 2);
    int max_slot = 0;
    bool any_slot = false;
    // Interleave the copies gate by gate so that corresponding entangling
    // gates are adjacent in execution order and share slot labels.
    for (const Gate& g : base_2q.gates) {
        Gate copy_b = g;
        copy_b.q0 += 2;
        if (copy_b.q1 >= 0) {
            copy_b.q1 += 2;
        }
        out.gates.push_back(g);
        out.gates.push_back(copy_b);
        if (g.noise_slot >= 1) {
            any_slot = true;
            max_slot = std::max(max_slot, g.noise_slot);
        }
    }
    Gate bell_cnot = Gate::cnot(0, 2);
    if (any_slot) {
        bell_cnot.noise_slot = max_slot + 1;
    }
    out.gates.push_back(bell_cnot);
    out.gates.push_back(Gate::h(0));
    return out;
}

double singlet_weight(const std::string& bits) {
    if (bits.size() != 4) {
        throw std::invalid_argument("singlet_weight: expected a 4-bit string");
    }
    return (bits[0] == '1' && bits[2] == '1') ? 1.0 : 0.0;
}

double electronic_overlap_weight(const std::string& bits) {
    if (bits.size() != 2) {
        throw std::invalid_argument("electronic_overlap_weight: expected a 2-bit string");
    }
    return bits[0] == bits[1] ? 1.0 : 0.0;
}

double bba_purity_from_counts(const ShotRecord& rec_4q) {
    if (rec_4q.n_shots < 1) {
        throw std::invalid_argument("bba_purity_from_counts: empty record");
    }
    return 1.0 - 2.0 * estimate_from_counts(rec_4q, singlet_weight);
}

Observable bba_singlet_projector() {
    Matrix m = Matrix::Zero(16, 16);
    for (int idx = 0; idx < 16; ++idx) {
        if (linalg::qubit_bit(idx, 0, 4) == 1 && linalg::qubit_bit(idx, 2, 4) == 1) {
            m(idx, idx) = 1.0;
        }
    }
    return Observable(4, std::move(m), "P_singlet");
}

double bba_singlet_probability(const DensityMatrix& rho_4q) {
    return expectation(rho_4q, bba_singlet_projector());
}

double clip_purity(double purity) {
    constexpr double kFloor = 1e-12;
    return std::min(1.0, std::max(kFloor, purity));
}

}  // namespace clawe
