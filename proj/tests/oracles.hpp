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

#include <clawe/channels.hpp>
#include <clawe/state.hpp>

// Test-only reference computations, kept independent of the library code
// paths they check.

namespace clawe::oracles {

struct AnalyticTwirl {
    Matrix superop;  // exact Haar average of U^dag S U
    double epsilon;  // depolarizing strength of that average
};

/// Exact Haar twirl by projection onto the commutant of {conj(U) kron U},
/// which is spanned by the identity map and the trace-to-identity map. The
/// two coefficients follow from the invariants Tr[S] and vec(1)^dag S vec(1).
AnalyticTwirl analytic_haar_twirl(const Matrix& superop, int dim);

/// Haar-random pure state of the given dimension.
Vector random_pure_state(int dim, std::mt19937_64& rng);

/// Random valid density matrix (mixture of a few random pure states).
Matrix random_density(int dim, std::mt19937_64& rng);

}  // namespace clawe::oracles
