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

#include <vector>

#include "clawe/state.hpp"

// Quantum channel algebra.
//
// Channels appear in two forms:
//   - KrausChannel: an operator-sum list {M_k}, trace-preserving when
//     sum_k M_k^dag M_k = 1. Complete positivity is automatic in this form.
//   - Superoperator: the 4^n x 4^n matrix acting on column-stacked density
//     matrices, vec(M rho M^dag) = (conj(M) kron M) vec(rho). This is the
//     representation used for distance computations and least-squares fits.
//
// The depolarizing channel rho -> (1-eps) rho + eps * 1/2^n is kept as an
// affine map rather than a Kraus list; the affine form is exact and stays
// compact at every qubit count.

namespace clawe {

struct KrausChannel {
    int n_qubits = 0;
    std::vector<Matrix> kraus;

    /// The identity channel on n qubits.
    static KrausChannel identity(int n_qubits);
    /// Single-Kraus channel wrapping a unitary.
    static KrausChannel from_unitary(int n_qubits, const Matrix& u);
    /// Two-qubit depolarizing channel of strength p as a 16-element Pauli
    /// Kraus list: rho -> (1-p) rho + p * 1/4.
    static KrausChannel two_qubit_depolarizing(double p);
};

struct DepolarizingSpec {
    int n_qubits = 0;
    double epsilon = 0.0;

    DepolarizingSpec(int n_qubits, double epsilon);
};

class Superoperator {
  public:
    Superoperator(int n_qubits, Matrix mat);

    static Superoperator identity(int n_qubits);
    static Superoperator from_unitary(int n_qubits, const Matrix& u);
    static Superoperator from_kraus(const KrausChannel& ch);
    static Superoperator depolarizing(const DepolarizingSpec& spec);

    int n_qubits() const { return n_qubits_; }
    const Matrix& matrix() const { return mat_; }

    /// Composition: (a * b) rho = a(b(rho)).
    friend Superoperator operator*(const Superoperator& a, const Superoperator& b);

    bool is_trace_preserving(double tol) const;

    DensityMatrix apply(const DensityMatrix& rho) const;
    /// Linear action without density-matrix validation.
    Matrix apply_raw(const Matrix& m) const;

  private:
    int n_qubits_;
    Matrix mat_;
};

/// Operator-sum application sum_k M_k rho M_k^dag.
DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

/// Trace preservation check; complete positivity holds by construction for
/// any Kraus list.
bool is_cptp(const KrausChannel& ch, double tol = kValidityTol);

/// (1 - eps) rho + eps * 1/2^n, applied as an affine map.
DensityMatrix depolarize(const DepolarizingSpec& spec, const DensityMatrix& rho);

struct DepolarizeIteration {
    double signal;  // (1-eps)^k
    double floor;   // eps * sum_{m=0}^{k-1} (1-eps)^m
};

/// Coefficients of the k-fold depolarizing channel. The floor is accumulated
/// as the explicit geometric sum so that signal + floor = 1 is a checkable
/// identity rather than a definition.
DepolarizeIteration iterate_depolarize(double epsilon, int k);

/// Monte-Carlo average of U^dag ch(U rho U^dag) U over Haar-random U.
Superoperator twirl_average(const KrausChannel& ch, int n_samples, std::uint64_t rng_seed);

struct EpsilonFit {
    double epsilon;   // least-squares noise strength of the nearest depolarizing map
    double residual;  // Frobenius distance to that map
};

/// Fit superop ~ (1-eps) id + eps * trace-to-maximally-mixed.
EpsilonFit extract_epsilon(const Superoperator& superop);

}  // namespace clawe
