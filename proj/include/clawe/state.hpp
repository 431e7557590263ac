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

#include "clawe/linalg.hpp"

// Dense representation of mixed states and Hermitian observables.
//
// A DensityMatrix is validated on construction (unit trace, Hermitian,
// positive semi-definite up to kValidityTol) and immutable afterwards, so
// every operation below returns a fresh value that is known to be a valid
// state. Eigenvalues are allowed to dip to -kValidityTol to absorb roundoff.

namespace clawe {

class DensityMatrix {
  public:
    DensityMatrix(int n_qubits, Matrix data);

    int n_qubits() const { return n_qubits_; }
    int dim() const { return static_cast<int>(data_.rows()); }
    const Matrix& matrix() const { return data_; }

    /// Tr(rho^2); 1 for pure states, 1/2^n for the maximally mixed state.
    double purity() const;

  private:
    int n_qubits_;
    Matrix data_;
};

class Observable {
  public:
    Observable(int n_qubits, Matrix data, std::string label);

    int n_qubits() const { return n_qubits_; }
    const Matrix& matrix() const { return data_; }
    const std::string& label() const { return label_; }

    /// Expectation value in the maximally mixed state, Tr[O] / 2^n.
    double infinite_temperature_value() const;

  private:
    int n_qubits_;
    Matrix data_;
    std::string label_;
};

/// |psi><psi| from a normalized amplitude vector of length 2^n.
DensityMatrix pure_state(const Vector& amplitudes);

/// The maximally mixed state identity / 2^n.
DensityMatrix infinite_temperature(int n_qubits);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Trace out `traced_qubits` (a proper, duplicate-free subset); remaining
/// qubits keep their relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& traced_qubits);

/// Tr[rho O], checked to be real up to kValidityTol.
double expectation(const DensityMatrix& rho, const Observable& obs);

DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& unitary);

/// Computational basis state |bits> as a density matrix (bits[0] = qubit 0).
DensityMatrix basis_state(const std::vector<int>& bits);

/// |0...0> on n qubits.
DensityMatrix zero_state(int n_qubits);

}  // namespace clawe
