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

#include "clawe/state.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clawe {

namespace {

void check_square_dim(const Matrix& m, int n_qubits, const char* what) {
    const int dim = linalg::dim_for_qubits(n_qubits);
    if (m.rows() != dim || m.cols() != dim) {
        throw std::invalid_argument(std::string(what) + ": matrix dimension " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                    " does not match " + std::to_string(n_qubits) + " qubits");
    }
}

}  // namespace

DensityMatrix::DensityMatrix(int n_qubits, Matrix data)
    : n_qubits_(n_qubits), data_(std::move(data)) {
    check_square_dim(data_, n_qubits_, "DensityMatrix");
    const double trace_err = std::abs(data_.trace() - Complex(1.0, 0.0));
    if (trace_err > kValidityTol) {
        throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                    std::to_string(trace_err));
    }
    if (!linalg::is_hermitian(data_, kValidityTol)) {
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    // Full eigendecomposition is cheap at dim <= 256 and gives the exact
    // spectral floor, unlike a Cholesky probe.
    Eigen::SelfAdjointEigenSolver<Matrix> es(data_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kValidityTol) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                    std::to_string(es.eigenvalues().minCoeff()));
    }
}

double DensityMatrix::purity() const {
    return (data_ * data_).trace().real();
}

Observable::Observable(int n_qubits, Matrix data, std::string label)
    : n_qubits_(n_qubits), data_(std::move(data)), label_(std::move(label)) {
    check_square_dim(data_, n_qubits_, "Observable");
    if (!linalg::is_hermitian(data_, kValidityTol)) {
        throw std::invalid_argument("Observable '" + label_ + "': not Hermitian");
    }
}

double Observable::infinite_temperature_value() const {
    return data_.trace().real() / static_cast<double>(data_.rows());
}

DensityMatrix pure_state(const Vector& amplitudes) {
    const auto len = amplitudes.size();
    if (len < 2 || (len & (len - 1)) != 0) {
        throw std::invalid_argument("pure_state: amplitude length must be a power of two >= 2");
    }
    int n_qubits = 0;
    while ((Eigen::Index{1} << n_qubits) < len) {
        ++n_qubits;
    }
    const double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > kValidityTol) {
        throw std::invalid_argument("pure_state: amplitudes not normalized, |psi| = " +
                                    std::to_string(norm));
    }
    return DensityMatrix(n_qubits, amplitudes * amplitudes.adjoint());
}

DensityMatrix infinite_temperature(int n_qubits) {
    const int dim = linalg::dim_for_qubits(n_qubits);
    return DensityMatrix(n_qubits, Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(a.n_qubits() + b.n_qubits(), linalg::kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& traced_qubits) {
    const int n = rho.n_qubits();
    std::vector<bool> traced(n, false);
    for (int q : traced_qubits) {
        if (q < 0 || q >= n) {
            throw std::invalid_argument("partial_trace: qubit index out of range");
        }
        if (traced[q]) {
            throw std::invalid_argument("partial_trace: duplicate qubit index");
        }
        traced[q] = true;
    }
    const int n_traced = static_cast<int>(traced_qubits.size());
    if (n_traced == n) {
        throw std::invalid_argument("partial_trace: cannot trace out every qubit");
    }
    if (n_traced == 0) {
        return rho;
    }

    // Bit masks of kept/traced positions in the original index, kept order
    // preserved.
    std::vector<int> kept_masks, traced_masks;
    for (int q = 0; q < n; ++q) {
        const int mask = 1 << (n - 1 - q);
        (traced[q] ? traced_masks : kept_masks).push_back(mask);
    }

    const int n_kept = n - n_traced;
    const int kept_dim = 1 << n_kept;
    const int traced_dim = 1 << n_traced;

    auto scatter = [](int value, const std::vector<int>& masks) {
        int out = 0;
        for (std::size_t i = 0; i < masks.size(); ++i) {
            if (value & (1 << (masks.size() - 1 - i))) {
                out |= masks[i];
            }
        }
        return out;
    };

    Matrix out = Matrix::Zero(kept_dim, kept_dim);
    for (int r = 0; r < kept_dim; ++r) {
        const int rbase = scatter(r, kept_masks);
        for (int c = 0; c < kept_dim; ++c) {
            const int cbase = scatter(c, kept_masks);
            Complex sum = 0;
            for (int t = 0; t < traced_dim; ++t) {
                const int toff = scatter(t, traced_masks);
                sum += rho.matrix()(rbase | toff, cbase | toff);
            }
            out(r, c) = sum;
        }
    }
    return DensityMatrix(n_kept, std::move(out));
}

double expectation(const DensityMatrix& rho, const Observable& obs) {
    if (rho.n_qubits() != obs.n_qubits()) {
        throw std::invalid_argument("expectation: state is on " + std::to_string(rho.n_qubits()) +
                                    " qubits but observable '" + obs.label() + "' is on " +
                                    std::to_string(obs.n_qubits()));
    }
    const Complex value = (rho.matrix() * obs.matrix()).trace();
    if (std::abs(value.imag()) > kValidityTol) {
        throw std::runtime_error("expectation: imaginary residue " +
                                 std::to_string(value.imag()));
    }
    return value.real();
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& unitary) {
    if (unitary.rows() != rho.dim() || unitary.cols() != rho.dim()) {
        throw std::invalid_argument("apply_unitary: dimension mismatch");
    }
    if (!linalg::is_unitary(unitary, kValidityTol)) {
        throw std::invalid_argument("apply_unitary: matrix is not unitary");
    }
    return DensityMatrix(rho.n_qubits(), unitary * rho.matrix() * unitary.adjoint());
}

DensityMatrix basis_state(const std::vector<int>& bits) {
    const int n = static_cast<int>(bits.size());
    const int dim = linalg::dim_for_qubits(n);
    int index = 0;
    for (int q = 0; q < n; ++q) {
        if (bits[q] != 0 && bits[q] != 1) {
            throw std::invalid_argument("basis_state: bits must be 0 or 1");
        }
        index = (index << 1) | bits[q];
    }
    Vector amps = Vector::Zero(dim);
    amps(index) = 1.0;
    return pure_state(amps);
}

DensityMatrix zero_state(int n_qubits) {
    return basis_state(std::vector<int>(n_qubits, 0));
}

}  // namespace clawe
