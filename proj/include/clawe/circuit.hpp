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

#include <cstdint>
#include <string>
#include <vector>

#include "clawe/linalg.hpp"

// Gate-level circuit values. Circuits are immutable once built; every
// transformation below returns a new circuit.
//
// Gate conventions (standard half-angle rotations):
//   RX(theta) = exp(-i theta X / 2),  RZ(theta) = exp(-i theta Z / 2),
//   S = diag(1, i), CNOT control = first index.
//
// The scalar depth of a circuit is its number of entangling (CNOT) gates;
// it is the depth coordinate every noise model in this library is indexed by.

namespace clawe {

enum class GateKind { H, X, Y, Z, S, Sdg, RX, RZ, CNOT };

struct Gate {
    GateKind kind;
    int q0 = 0;
    int q1 = -1;         // CNOT target, unused otherwise
    double theta = 0.0;  // RX/RZ angle, unused otherwise

    // Position of this entangling gate in the target computation it belongs
    // to (1-based). Drifting noise models use it to apply the right noise
    // strength when a gate is replayed inside a calibration circuit; -1
    // means "use the running gate count of the executed circuit".
    int noise_slot = -1;

    static Gate h(int q) { return {GateKind::H, q}; }
    static Gate x(int q) { return {GateKind::X, q}; }
    static Gate y(int q) { return {GateKind::Y, q}; }
    static Gate z(int q) { return {GateKind::Z, q}; }
    static Gate s(int q) { return {GateKind::S, q}; }
    static Gate sdg(int q) { return {GateKind::Sdg, q}; }
    static Gate rx(int q, double theta) { return {GateKind::RX, q, -1, theta}; }
    static Gate rz(int q, double theta) { return {GateKind::RZ, q, -1, theta}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target}; }

    bool is_cnot() const { return kind == GateKind::CNOT; }

    /// 2x2 (or 4x4 for CNOT, control = sub-qubit 0) unitary of the gate.
    Matrix matrix() const;
    Gate inverse() const;

    bool operator==(const Gate&) const = default;
};

struct Circuit {
    int n_qubits = 1;
    std::vector<Gate> gates;

    Circuit() = default;
    Circuit(int n_qubits, std::vector<Gate> gates);

    bool operator==(const Circuit&) const = default;
};

/// Number of entangling gates.
int scalar_depth(const Circuit& c);

Circuit concat(const Circuit& a, const Circuit& b);

/// Reversed gate order with every gate inverted; composing with the original
/// gives the identity.
Circuit inverse(const Circuit& c);

/// The circuit repeated k >= 1 times.
Circuit power(const Circuit& c, int k);

/// Split at the given strictly increasing interior gate indices; the
/// concatenation of the returned pieces is exactly `c`.
std::vector<Circuit> fragment(const Circuit& c, const std::vector<int>& boundaries);

/// Noise amplification: every CNOT becomes 2*round + 1 consecutive copies
/// (round in 0..3), scaling the scalar depth by 1/3/5/7 while leaving the
/// ideal unitary unchanged.
Circuit qcna_fold(const Circuit& c, int round);

/// Dress every CNOT with a uniformly random Pauli pair and the compensating
/// pair behind it, leaving the total unitary equal to the original up to a
/// global phase. Exactly four single-qubit gates are inserted per CNOT;
/// identity Paulis are emitted as RZ(0) placeholders so the count is fixed.
Circuit randomized_compile(const Circuit& c, std::uint64_t rng_seed);

/// Full-register unitary, gates applied in sequence order (n_qubits <= 8).
Matrix circuit_unitary(const Circuit& c);

/// Copy with entangling gates labeled first_slot, first_slot + 1, ... in
/// program order.
Circuit label_entangling_slots(const Circuit& c, int first_slot = 1);

/// Line-oriented text form, one gate per line: `KIND q[,q2][,theta]`.
/// Slot labels are not part of the format.
std::string circuit_to_text(const Circuit& c);
Circuit circuit_from_text(int n_qubits, const std::string& text);

}  // namespace clawe
