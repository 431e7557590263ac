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

#include "oracles.hpp"

namespace clawe::oracles {

AnalyticTwirl analytic_haar_twirl(const Matrix& superop, int dim) {
    const double d = dim;
    const int d2 = dim * dim;
    Vector v = Vector::Zero(d2);
    for (int i = 0; i < dim; ++i) {
        v(i * dim + i) = 1.0;  // vec(identity), column stacking
    }
    const double tr = superop.trace().real();
    const double vsv = (v.adjoint() * superop * v).value().real();
    // Solve  alpha d^2 + beta d = Tr[S],  alpha d + beta d^2 = v^dag S v.
    const double det = d * d * d * d - d * d;
    const double alpha = (d * d * tr - d * vsv) / det;
    const double beta = (d * d * vsv - d * tr) / det;
    AnalyticTwirl out;
    out.superop = alpha * Matrix::Identity(d2, d2) + beta * (v * v.transpose());
    out.epsilon = 1.0 - alpha;
    return out;
}

Vector random_pure_state(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector psi(dim);
    for (int i = 0; i < dim; ++i) {
        psi(i) = Complex(gauss(rng), gauss(rng));
    }
    psi /= psi.norm();
    return psi;
}

Matrix random_density(int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    Matrix rho = Matrix::Zero(dim, dim);
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
        const Vector psi = random_pure_state(dim, rng);
        const double w = unif(rng);
        rho += w * (psi * psi.adjoint());
        total += w;
    }
    return rho / total;
}

}  // namespace clawe::oracles
