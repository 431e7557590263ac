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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

// Shared dense-matrix helpers. Everything here works on raw Eigen matrices;
// the typed wrappers (DensityMatrix, KrausChannel, ...) live in the module
// headers.
//
// Conventions used across the library:
//   - Qubit 0 is the most significant bit of a computational basis index.
//   - Matrices are vectorized by stacking columns (Eigen's native layout).

namespace clawe {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerance for validity checks (hermiticity, trace, unitarity).
inline constexpr double kValidityTol = 1e-9;
// Tolerance for exact algebraic identities at these dimensions.
inline constexpr double kExactTol = 1e-12;

namespace linalg {

/// 2^n, with a range check (n in [1, 8] keeps everything dense and fast).
int dim_for_qubits(int n_qubits);

/// Bit of `basis_index` belonging to `qubit` (qubit 0 = most significant).
inline int qubit_bit(int basis_index, int qubit, int n_qubits) {
    return (basis_index >> (n_qubits - 1 - qubit)) & 1;
}

Matrix kron(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tol);
bool is_unitary(const Matrix& m, double tol);

/// Column-stacking vectorization and its inverse.
Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, int dim);

/// Lift a 2x2 matrix to the full register, acting on `qubit`.
Matrix embed_one_qubit(const Matrix& u, int qubit, int n_qubits);

/// Lift a 4x4 matrix to the full register, acting on the ordered pair
/// (qubit_a, qubit_b); the matrix's own qubit 0 maps to qubit_a.
Matrix embed_two_qubit(const Matrix& u, int qubit_a, int qubit_b, int n_qubits);

/// exp(-i * H * t) for Hermitian H, via eigendecomposition.
Matrix expm_minus_i_hermitian(const Matrix& hermitian, double t);

/// Haar-distributed random unitary: QR of a complex Gaussian matrix with the
/// R-diagonal phases folded back into Q.
Matrix haar_unitary(int dim, std::mt19937_64& rng);

double frobenius_distance(const Matrix& a, const Matrix& b);

/// Deterministic per-index substream seeds (splitmix64 of seed and index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits of the generator.
double uniform_unit(std::mt19937_64& rng);

// Fixed single-qubit matrices.
const Matrix& pauli_i();
const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();

}  // namespace linalg
}  // namespace clawe
