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

#include "clawe/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <stdexcept>

namespace clawe::linalg {

int dim_for_qubits(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 8) {
        throw std::invalid_argument("qubit count must be in [1, 8], got " +
                                    std::to_string(n_qubits));
    }
    return 1 << n_qubits;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    Matrix gram = m.adjoint() * m;
    gram -= Matrix::Identity(m.rows(), m.cols());
    return gram.cwiseAbs().maxCoeff() <= tol;
}

Vector vectorize(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvectorize(const Vector& v, int dim) {
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw std::invalid_argument("vectorized length does not match dimension");
    }
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix embed_one_qubit(const Matrix& u, int qubit, int n_qubits) {
    if (u.rows() != 2 || u.cols() != 2) {
        throw std::invalid_argument("embed_one_qubit expects a 2x2 matrix");
    }
    const int dim = dim_for_qubits(n_qubits);
    if (qubit < 0 || qubit >= n_qubits) {
        throw std::invalid_argument("qubit index out of range");
    }
    const int mask = 1 << (n_qubits - 1 - qubit);
    Matrix out = Matrix::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const int cb = (col & mask) ? 1 : 0;
        for (int rb = 0; rb < 2; ++rb) {
            const int row = rb ? (col | mask) : (col & ~mask);
            out(row, col) += u(rb, cb);
        }
    }
    return out;
}

Matrix embed_two_qubit(const Matrix& u, int qubit_a, int qubit_b, int n_qubits) {
    if (u.rows() != 4 || u.cols() != 4) {
        throw std::invalid_argument("embed_two_qubit expects a 4x4 matrix");
    }
    const int dim = dim_for_qubits(n_qubits);
    if (qubit_a < 0 || qubit_a >= n_qubits || qubit_b < 0 || qubit_b >= n_qubits ||
        qubit_a == qubit_b) {
        throw std::invalid_argument("two-qubit embedding needs two distinct in-range qubits");
    }
    const int mask_a = 1 << (n_qubits - 1 - qubit_a);
    const int mask_b = 1 << (n_qubits - 1 - qubit_b);
    Matrix out = Matrix::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const int csub = ((col & mask_a) ? 2 : 0) | ((col & mask_b) ? 1 : 0);
        const int base = col & ~(mask_a | mask_b);
        for (int rsub = 0; rsub < 4; ++rsub) {
            const int row = base | ((rsub & 2) ? mask_a : 0) | ((rsub & 1) ? mask_b : 0);
            out(row, col) += u(rsub, csub);
        }
    }
    return out;
}

Matrix expm_minus_i_hermitian(const Matrix& hermitian, double t) {
    if (!is_hermitian(hermitian, 1e-9)) {
        throw std::invalid_argument("matrix exponential input is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
    const Eigen::VectorXd& evals = es.eigenvalues();
    Vector phases(evals.size());
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        phases(i) = std::exp(Complex(0.0, -evals(i) * t));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix haar_unitary(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            g(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the gauge: without this the distribution depends on the QR
    // implementation rather than being Haar.
    for (int j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        double mag = std::abs(d);
        q.col(j) *= (mag > 0) ? d / mag : Complex(1.0, 0.0);
    }
    return q;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
    return (a - b).norm();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {
Matrix make_pauli(int which) {
    Matrix m(2, 2);
    switch (which) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}
}  // namespace

const Matrix& pauli_i() { static const Matrix m = make_pauli(0); return m; }
const Matrix& pauli_x() { static const Matrix m = make_pauli(1); return m; }
const Matrix& pauli_y() { static const Matrix m = make_pauli(2); return m; }
const Matrix& pauli_z() { static const Matrix m = make_pauli(3); return m; }

}  // namespace clawe::linalg
