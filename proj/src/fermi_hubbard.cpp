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

#include "clawe/fermi_hubbard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clawe {

namespace {

void check_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " is not finite");
    }
}

}  // namespace

FHSchedule::FHSchedule(std::function<double(double)> u, double t_final, std::string description)
    : u_(std::move(u)), t_final_(t_final), description_(std::move(description)) {
    check_finite(t_final_, "t_final");
    if (t_final_ < 0) {
        throw std::invalid_argument("t_final must be >= 0");
    }
    // Probe the schedule on a grid; a pathological interaction should fail
    // loudly at construction, not mid-run.
    for (int i = 0; i <= 1000; ++i) {
        check_finite(u_(t_final_ * i / 1000.0), "u_tilde(t)");
    }
}

FHSchedule FHSchedule::constant(double u_tilde, double t_final, std::string description) {
    check_finite(u_tilde, "u_tilde");
    return FHSchedule([u_tilde](double) { return u_tilde; }, t_final, std::move(description));
}

FHSchedule FHSchedule::piecewise_linear(std::vector<std::pair<double, double>> breakpoints,
                                        double t_final, std::string description) {
    if (breakpoints.empty()) {
        throw std::invalid_argument("piecewise schedule needs at least one breakpoint");
    }
    std::sort(breakpoints.begin(), breakpoints.end());
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i].first == breakpoints[i + 1].first) {
            throw std::invalid_argument("piecewise schedule has duplicate breakpoint times");
        }
    }
    auto u = [pts = std::move(breakpoints)](double t) {
        if (t <= pts.front().first) return pts.front().second;
        if (t >= pts.back().first) return pts.back().second;
        auto hi = std::upper_bound(pts.begin(), pts.end(), std::make_pair(t, 1e300));
        auto lo = hi - 1;
        const double w = (t - lo->first) / (hi->first - lo->first);
        return lo->second + w * (hi->second - lo->second);
    };
    return FHSchedule(std::move(u), t_final, std::move(description));
}

StepOrdering PFAConfig::ordering_for_step(int step_1based) const {
    if (orderings.empty()) {
        return StepOrdering::XXZ;
    }
    return orderings.at(static_cast<std::size_t>(step_1based - 1));
}

void PFAConfig::validate() const {
    if (n_steps < 1 || n_t < 1) {
        throw std::invalid_argument("PFAConfig: n_steps and n_t must be >= 1");
    }
    if (!orderings.empty() && orderings.size() != static_cast<std::size_t>(n_steps)) {
        throw std::invalid_argument("PFAConfig: orderings must be empty or one per step");
    }
}

Matrix fh_hamiltonian(double u_tilde_value) {
    check_finite(u_tilde_value, "u_tilde");
    const Matrix& x = linalg::pauli_x();
    const Matrix& z = linalg::pauli_z();
    const Matrix id = Matrix::Identity(2, 2);
    Matrix h = -linalg::kron(x, id) - linalg::kron(id, x);
    h += 0.5 * u_tilde_value * linalg::kron(z, z);
    return h;
}

Circuit initial_state_circuit() {
    return Circuit(2, {Gate::h(0), Gate::h(1)});
}

Circuit pfa_step(double u_tilde_value, double dt, StepOrdering ordering) {
    check_finite(u_tilde_value, "u_tilde");
    check_finite(dt, "dt");
    // Gate::rx carries exp(-i theta X / 2); the hopping term -(X0+X1) evolved
    // for dt is exp(+i dt X) on each qubit, i.e. RX(-2 dt).
    const std::vector<Gate> x_block = {Gate::rx(0, -2.0 * dt), Gate::rx(1, -2.0 * dt)};
    const std::vector<Gate> zz_block = {Gate::cnot(0, 1), Gate::rz(1, u_tilde_value * dt),
                                        Gate::cnot(0, 1)};
    std::vector<Gate> gates;
    gates.reserve(5);
    auto push = [&gates](const std::vector<Gate>& block) {
        gates.insert(gates.end(), block.begin(), block.end());
    };
    switch (ordering) {
        case StepOrdering::XXZ:
            push(x_block);
            push(zz_block);
            break;
        case StepOrdering::XZX:
            gates.push_back(x_block[0]);
            push(zz_block);
            gates.push_back(x_block[1]);
            break;
        case StepOrdering::ZXX:
            push(zz_block);
            push(x_block);
            break;
        default:
            throw std::invalid_argument("pfa_step: unknown ordering");
    }
    return Circuit(2, std::move(gates));
}

Circuit pfa_circuit(const FHSchedule& schedule, const PFAConfig& cfg, int through_step) {
    cfg.validate();
    if (through_step < 0 || through_step > cfg.n_steps) {
        throw std::invalid_argument("pfa_circuit: through_step must be in [0, n_steps]");
    }
    Circuit out = initial_state_circuit();
    const double step_dt = schedule.t_final() / cfg.n_steps;
    const double sub_dt = step_dt / cfg.n_t;
    for (int k = 1; k <= through_step; ++k) {
        const StepOrdering ordering = cfg.ordering_for_step(k);
        for (int j = 0; j < cfg.n_t; ++j) {
            const double t_mid = (k - 1) * step_dt + (j + 0.5) * sub_dt;
            out = concat(out, pfa_step(schedule.u_tilde(t_mid), sub_dt, ordering));
        }
    }
    return out;
}

namespace {

Matrix evolution_product(const FHSchedule& schedule, double t, int fine_steps) {
    Matrix u = Matrix::Identity(4, 4);
    const double dt = t / fine_steps;
    for (int j = 0; j < fine_steps; ++j) {
        const double t_mid = (j + 0.5) * dt;
        u = linalg::expm_minus_i_hermitian(fh_hamiltonian(schedule.u_tilde(t_mid)), dt) * u;
    }
    return u;
}

}  // namespace

Matrix exact_evolution(const FHSchedule& schedule, double t, int fine_steps) {
    if (fine_steps < 1) {
        throw std::invalid_argument("exact_evolution: fine_steps must be >= 1");
    }
    if (t < 0 || t > schedule.t_final() + 1e-12) {
        throw std::invalid_argument("exact_evolution: t outside [0, t_final]");
    }
    if (t == 0.0) {
        return Matrix::Identity(4, 4);
    }
    const Matrix coarse = evolution_product(schedule, t, fine_steps);
    const Matrix fine = evolution_product(schedule, t, 2 * fine_steps);
    if ((coarse - fine).cwiseAbs().maxCoeff() >= 1e-8) {
        throw std::runtime_error("exact_evolution: grid " + std::to_string(fine_steps) +
                                 " not converged; increase fine_steps");
    }
    return fine;
}

std::vector<DigitizationBand> digitization_error(const FHSchedule& schedule, const PFAConfig& cfg,
                                                 const Observable& observable, int n_perm_samples,
                                                 std::uint64_t rng_seed) {
    cfg.validate();
    if (n_perm_samples < 2) {
        throw std::invalid_argument("digitization_error: need at least 2 ordering samples");
    }
    if (observable.n_qubits() != 2) {
        throw std::invalid_argument("digitization_error: observable must act on 2 qubits");
    }
    const DensityMatrix rho0 = zero_state(2);
    std::vector<DigitizationBand> bands;
    bands.reserve(cfg.n_steps);
    for (int step = 1; step <= cfg.n_steps; ++step) {
        std::vector<double> values;
        values.reserve(n_perm_samples);
        for (int s = 0; s < n_perm_samples; ++s) {
            std::mt19937_64 rng(linalg::derive_seed(rng_seed, (step - 1) * 1000003ULL + s));
            std::uniform_int_distribution<int> dist(0, kStepOrderingCount - 1);
            PFAConfig sampled = cfg;
            sampled.orderings.assign(cfg.n_steps, StepOrdering::XXZ);
            for (int k = 0; k < step; ++k) {
                sampled.orderings[k] = static_cast<StepOrdering>(dist(rng));
            }
            const Circuit c = pfa_circuit(schedule, sampled, step);
            values.push_back(expectation(apply_unitary(rho0, circuit_unitary(c)), observable));
        }
        DigitizationBand band;
        band.step = step;
        band.lo = *std::min_element(values.begin(), values.end());
        band.hi = *std::max_element(values.begin(), values.end());
        double mean = 0;
        for (double v : values) mean += v;
        mean /= values.size();
        double var = 0;
        for (double v : values) var += (v - mean) * (v - mean);
        band.mean = mean;
        band.stddev = std::sqrt(var / (values.size() - 1));
        bands.push_back(band);
    }
    return bands;
}

}  // namespace clawe
