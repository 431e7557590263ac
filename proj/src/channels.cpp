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

#include "clawe/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace clawe {

namespace {

using linalg::dim_for_qubits;

Vector identity_vec(int dim) {
    return linalg::vectorize(Matrix::Identity(dim, dim));
}

}  // namespace

KrausChannel KrausChannel::identity(int n_qubits) {
    const int dim = dim_for_qubits(n_qubits);
    return KrausChannel{n_qubits, {Matrix::Identity(dim, dim)}};
}

KrausChannel KrausChannel::from_unitary(int n_qubits, const Matrix& u) {
    const int dim = dim_for_qubits(n_qubits);
    if (u.rows() != dim || u.cols() != dim) {
        throw std::invalid_argument("KrausChannel::from_unitary: dimension mismatch");
    }
    if (!linalg::is_unitary(u, kValidityTol)) {
        throw std::invalid_argument("KrausChannel::from_unitary: matrix is not unitary");
    }
    return KrausChannel{n_qubits, {u}};
}

KrausChannel KrausChannel::two_qubit_depolarizing(double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("two_qubit_depolarizing: p must be in [0, 1]");
    }
    const Matrix paulis[4] = {linalg::pauli_i(), linalg::pauli_x(), linalg::pauli_y(),
                              linalg::pauli_z()};
    std::vector<Matrix> kraus;
    kraus.reserve(16);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const double w = (a == 0 && b == 0) ? 1.0 - 15.0 * p / 16.0 : p / 16.0;
            kraus.push_back(std::sqrt(w) * linalg::kron(paulis[a], paulis[b]));
        }
    }
    return KrausChannel{2, std::move(kraus)};
}

DepolarizingSpec::DepolarizingSpec(int n_qubits_in, double epsilon_in)
    : n_qubits(n_qubits_in), epsilon(epsilon_in) {
    dim_for_qubits(n_qubits);
    if (epsilon < 0.0 || epsilon > 1.0) {
        throw std::invalid_argument("DepolarizingSpec: epsilon must be in [0, 1], got " +
                                    std::to_string(epsilon));
    }
}

Superoperator::Superoperator(int n_qubits, Matrix mat) : n_qubits_(n_qubits), mat_(std::move(mat)) {
    const int d2 = dim_for_qubits(n_qubits) * dim_for_qubits(n_qubits);
    if (mat_.rows() != d2 || mat_.cols() != d2) {
        throw std::invalid_argument("Superoperator: expected a " + std::to_string(d2) + "x" +
                                    std::to_string(d2) + " matrix");
    }
}

Superoperator Superoperator::identity(int n_qubits) {
    const int d2 = dim_for_qubits(n_qubits) * dim_for_qubits(n_qubits);
    return Superoperator(n_qubits, Matrix::Identity(d2, d2));
}

Superoperator Superoperator::from_unitary(int n_qubits, const Matrix& u) {
    const int dim = dim_for_qubits(n_qubits);
    if (u.rows() != dim || u.cols() != dim) {
        throw std::invalid_argument("Superoperator::from_unitary: dimension mismatch");
    }
    return Superoperator(n_qubits, linalg::kron(u.conjugate(), u));
}

Superoperator Superoperator::from_kraus(const KrausChannel& ch) {
    const int dim = dim_for_qubits(ch.n_qubits);
    Matrix acc = Matrix::Zero(dim * dim, dim * dim);
    for (const Matrix& m : ch.kraus) {
        if (m.rows() != dim || m.cols() != dim) {
            throw std::invalid_argument("Superoperator::from_kraus: Kraus dimension mismatch");
        }
        acc += linalg::kron(m.conjugate(), m);
    }
    return Superoperator(ch.n_qubits, std::move(acc));
}

Superoperator Superoperator::depolarizing(const DepolarizingSpec& spec) {
    const int dim = dim_for_qubits(spec.n_qubits);
    const Vector v = identity_vec(dim);
    Matrix mat = (1.0 - spec.epsilon) * Matrix::Identity(dim * dim, dim * dim);
    mat += (spec.epsilon / dim) * (v * v.transpose());
    return Superoperator(spec.n_qubits, std::move(mat));
}

Superoperator operator*(const Superoperator& a, const Superoperator& b) {
    if (a.n_qubits_ != b.n_qubits_) {
        throw std::invalid_argument("Superoperator composition: qubit count mismatch");
    }
    return Superoperator(a.n_qubits_, a.mat_ * b.mat_);
}

bool Superoperator::is_trace_preserving(double tol) const {
    // Tr[S(rho)] = Tr[rho] for all rho iff S^dag leaves vec(1) fixed.
    const int dim = dim_for_qubits(n_qubits_);
    const Vector v = identity_vec(dim);
    return ((mat_.adjoint() * v) - v).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix Superoperator::apply(const DensityMatrix& rho) const {
    if (rho.n_qubits() != n_qubits_) {
        throw std::invalid_argument("Superoperator::apply: qubit count mismatch");
    }
    return DensityMatrix(n_qubits_, apply_raw(rho.matrix()));
}

Matrix Superoperator::apply_raw(const Matrix& m) const {
    const int dim = dim_for_qubits(n_qubits_);
    return linalg::unvectorize(mat_ * linalg::vectorize(m), dim);
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
    const int dim = dim_for_qubits(ch.n_qubits);
    if (rho.dim() != dim) {
        throw std::invalid_argument("apply_channel: dimension mismatch");
    }
    if (!is_cptp(ch)) {
        throw std::invalid_argument("apply_channel: channel is not trace-preserving");
    }
    Matrix out = Matrix::Zero(dim, dim);
    for (const Matrix& m : ch.kraus) {
        out += m * rho.matrix() * m.adjoint();
    }
    return DensityMatrix(ch.n_qubits, std::move(out));
}

bool is_cptp(const KrausChannel& ch, double tol) {
    if (ch.kraus.empty()) {
        return false;
    }
    const int dim = dim_for_qubits(ch.n_qubits);
    Matrix acc = Matrix::Zero(dim, dim);
    for (const Matrix& m : ch.kraus) {
        if (m.rows() != dim || m.cols() != dim) {
            return false;
        }
        acc += m.adjoint() * m;
    }
    acc -= Matrix::Identity(dim, dim);
    return acc.cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix depolarize(const DepolarizingSpec& spec, const DensityMatrix& rho) {
    if (spec.n_qubits != rho.n_qubits()) {
        throw std::invalid_argument("depolarize: qubit count mismatch");
    }
    const int dim = rho.dim();
    Matrix out = (1.0 - spec.epsilon) * rho.matrix();
    out += (spec.epsilon / dim) * Matrix::Identity(dim, dim);
    return DensityMatrix(rho.n_qubits(), std::move(out));
}

DepolarizeIteration iterate_depolarize(double epsilon, int k) {
    if (k < 0) {
        throw std::invalid_argument("iterate_depolarize: k must be >= 0");
    }
    if (epsilon < 0.0 || epsilon > 1.0) {
        throw std::invalid_argument("iterate_depolarize: epsilon must be in [0, 1]");
    }
    double signal = 1.0;
    double floor = 0.0;
    for (int m = 0; m < k; ++m) {
        floor += epsilon * signal;  // epsilon * (1-epsilon)^m
        signal *= 1.0 - epsilon;
    }
    return {signal, floor};
}

Superoperator twirl_average(const KrausChannel& ch, int n_samples, std::uint64_t rng_seed) {
    if (n_samples < 1) {
        throw std::invalid_argument("twirl_average: need at least one sample");
    }
    const int dim = dim_for_qubits(ch.n_qubits);
    const Matrix channel = Superoperator::from_kraus(ch).matrix();
    std::mt19937_64 rng(rng_seed);
    Matrix acc = Matrix::Zero(dim * dim, dim * dim);
    for (int s = 0; s < n_samples; ++s) {
        const Matrix u = linalg::haar_unitary(dim, rng);
        const Matrix su = linalg::kron(u.conjugate(), u);
        acc += su.adjoint() * channel * su;
    }
    return Superoperator(ch.n_qubits, acc / static_cast<double>(n_samples));
}

EpsilonFit extract_epsilon(const Superoperator& superop) {
    if (!superop.is_trace_preserving(1e-6)) {
        throw std::invalid_argument("extract_epsilon: map is not trace-preserving");
    }
    const int dim = dim_for_qubits(superop.n_qubits());
    const int d2 = dim * dim;
    const Vector v = identity_vec(dim);
    // Model: S(eps) = id + eps * (P - id) with P = v v^T / dim. One-parameter
    // linear least squares in the Frobenius inner product.
    Matrix direction = (v * v.transpose()) / static_cast<double>(dim);
    direction -= Matrix::Identity(d2, d2);
    const Matrix deviation = superop.matrix() - Matrix::Identity(d2, d2);
    const double num = (direction.conjugate().cwiseProduct(deviation)).sum().real();
    const double den = direction.squaredNorm();
    const double eps = num / den;
    const double residual = (deviation - eps * direction).norm();
    return {eps, residual};
}

}  // namespace clawe
