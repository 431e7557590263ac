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

#include "clawe/virtual_qpu.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace clawe {

namespace {

double checked_epsilon(double eps, const char* what) {
    if (eps < 0.0 || eps > 1.0) {
        throw std::invalid_argument(std::string(what) + ": strength " + std::to_string(eps) +
                                    " outside [0, 1]");
    }
    return eps;
}

// Strength for the CNOT whose slot label / running ordinal is `index`
// (1-based).
double vector_epsilon(const GlobalVectorNoise& noise, int index) {
    if (index < 1 || index > static_cast<int>(noise.epsilon_per_gate.size())) {
        throw std::invalid_argument("GlobalVectorNoise: entangling gate index " +
                                    std::to_string(index) + " has no strength entry (" +
                                    std::to_string(noise.epsilon_per_gate.size()) +
                                    " entries)");
    }
    return noise.epsilon_per_gate[static_cast<std::size_t>(index - 1)];
}

Matrix zz_rotation(double angle) {
    Matrix m = Matrix::Zero(4, 4);
    const Complex minus = std::exp(Complex(0.0, -angle / 2));
    const Complex plus = std::exp(Complex(0.0, angle / 2));
    m(0, 0) = minus;
    m(1, 1) = plus;
    m(2, 2) = plus;
    m(3, 3) = minus;
    return m;
}

std::string bitstring_for_index(int index, int n_qubits) {
    std::string s(n_qubits, '0');
    for (int q = 0; q < n_qubits; ++q) {
        if (linalg::qubit_bit(index, q, n_qubits)) {
            s[q] = '1';
        }
    }
    return s;
}

}  // namespace

GlobalVectorNoise GlobalVectorNoise::from_segments(
    const std::vector<std::pair<int, double>>& segments) {
    GlobalVectorNoise out;
    for (const auto& [count, eps] : segments) {
        if (count < 1) {
            throw std::invalid_argument("GlobalVectorNoise: segment gate count must be >= 1");
        }
        checked_epsilon(eps, "GlobalVectorNoise");
        out.epsilon_per_gate.insert(out.epsilon_per_gate.end(), count, eps);
    }
    return out;
}

GlobalVectorNoise GlobalVectorNoise::linear_drift(double eps_first, double eps_last, int n_gates) {
    if (n_gates < 1) {
        throw std::invalid_argument("linear_drift: need at least one gate");
    }
    GlobalVectorNoise out;
    out.epsilon_per_gate.reserve(n_gates);
    for (int i = 0; i < n_gates; ++i) {
        const double w = n_gates == 1 ? 0.0 : static_cast<double>(i) / (n_gates - 1);
        out.epsilon_per_gate.push_back(
            checked_epsilon(eps_first + w * (eps_last - eps_first), "linear_drift"));
    }
    return out;
}

void validate_noise(const NoiseModel& noise) {
    std::visit(
        [](const auto& model) {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, GlobalConstantNoise>) {
                checked_epsilon(model.epsilon, "GlobalConstantNoise");
            } else if constexpr (std::is_same_v<T, GlobalVectorNoise>) {
                if (model.epsilon_per_gate.empty()) {
                    throw std::invalid_argument("GlobalVectorNoise: empty strength table");
                }
                for (double e : model.epsilon_per_gate) {
                    checked_epsilon(e, "GlobalVectorNoise");
                }
            } else if constexpr (std::is_same_v<T, LocalAfterCnotNoise>) {
                if (model.channel.n_qubits != 2) {
                    throw std::invalid_argument("LocalAfterCnotNoise: channel must be 2-qubit");
                }
                if (!is_cptp(model.channel)) {
                    throw std::invalid_argument("LocalAfterCnotNoise: channel is not CPTP");
                }
            }
        },
        noise);
}

DensityMatrix evolve(const Circuit& c, const NoiseModel& noise, const DensityMatrix& rho0) {
    if (c.n_qubits != rho0.n_qubits()) {
        throw std::invalid_argument("evolve: circuit and state qubit counts differ");
    }
    validate_noise(noise);
    const int n = c.n_qubits;
    const int dim = rho0.dim();
    Matrix rho = rho0.matrix();
    int cnot_ordinal = 0;
    for (const Gate& g : c.gates) {
        const Matrix u = g.is_cnot() ? linalg::embed_two_qubit(g.matrix(), g.q0, g.q1, n)
                                     : linalg::embed_one_qubit(g.matrix(), g.q0, n);
        rho = u * rho * u.adjoint();
        if (!g.is_cnot()) {
            continue;
        }
        ++cnot_ordinal;
        const int index = g.noise_slot >= 1 ? g.noise_slot : cnot_ordinal;
        if (const auto* gc = std::get_if<GlobalConstantNoise>(&noise)) {
            rho = (1.0 - gc->epsilon) * rho +
                  (gc->epsilon / dim) * Matrix::Identity(dim, dim);
        } else if (const auto* gv = std::get_if<GlobalVectorNoise>(&noise)) {
            const double eps = vector_epsilon(*gv, index);
            rho = (1.0 - eps) * rho + (eps / dim) * Matrix::Identity(dim, dim);
        } else if (const auto* local = std::get_if<LocalAfterCnotNoise>(&noise)) {
            Matrix acc = Matrix::Zero(dim, dim);
            for (const Matrix& m : local->channel.kraus) {
                const Matrix full = linalg::embed_two_qubit(m, g.q0, g.q1, n);
                acc += full * rho * full.adjoint();
            }
            const Matrix over =
                linalg::embed_two_qubit(zz_rotation(local->coherent_angle), g.q0, g.q1, n);
            rho = over * acc * over.adjoint();
        }
    }
    return DensityMatrix(n, std::move(rho));
}

Superoperator circuit_superoperator(const Circuit& c, const NoiseModel& noise) {
    validate_noise(noise);
    const int n = c.n_qubits;
    Superoperator s = Superoperator::identity(n);
    int cnot_ordinal = 0;
    for (const Gate& g : c.gates) {
        const Matrix u = g.is_cnot() ? linalg::embed_two_qubit(g.matrix(), g.q0, g.q1, n)
                                     : linalg::embed_one_qubit(g.matrix(), g.q0, n);
        s = Superoperator::from_unitary(n, u) * s;
        if (!g.is_cnot()) {
            continue;
        }
        ++cnot_ordinal;
        const int index = g.noise_slot >= 1 ? g.noise_slot : cnot_ordinal;
        if (const auto* gc = std::get_if<GlobalConstantNoise>(&noise)) {
            s = Superoperator::depolarizing({n, gc->epsilon}) * s;
        } else if (const auto* gv = std::get_if<GlobalVectorNoise>(&noise)) {
            s = Superoperator::depolarizing({n, vector_epsilon(*gv, index)}) * s;
        } else if (const auto* local = std::get_if<LocalAfterCnotNoise>(&noise)) {
            KrausChannel embedded;
            embedded.n_qubits = n;
            for (const Matrix& m : local->channel.kraus) {
                embedded.kraus.push_back(linalg::embed_two_qubit(m, g.q0, g.q1, n));
            }
            const Matrix over =
                linalg::embed_two_qubit(zz_rotation(local->coherent_angle), g.q0, g.q1, n);
            s = Superoperator::from_unitary(n, over) * Superoperator::from_kraus(embedded) * s;
        }
    }
    return s;
}

ShotRecord sample_shots(const DensityMatrix& rho, const Circuit& pre_measurement,
                        long long n_shots, std::uint64_t rng_seed) {
    if (n_shots < 1) {
        throw std::invalid_argument("sample_shots: n_shots must be >= 1");
    }
    DensityMatrix measured = pre_measurement.gates.empty()
                                 ? rho
                                 : apply_unitary(rho, circuit_unitary(pre_measurement));
    const int dim = measured.dim();
    std::vector<double> cumulative(dim);
    double total = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double p = measured.matrix()(i, i).real();
        if (p < -kValidityTol) {
            throw std::invalid_argument("sample_shots: negative outcome probability " +
                                        std::to_string(p));
        }
        total += std::max(p, 0.0);
        cumulative[i] = total;
    }
    std::mt19937_64 rng(rng_seed);
    std::vector<long long> hits(dim, 0);
    for (long long s = 0; s < n_shots; ++s) {
        const double u = linalg::uniform_unit(rng) * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const int idx = std::min<int>(static_cast<int>(it - cumulative.begin()), dim - 1);
        ++hits[idx];
    }
    ShotRecord rec;
    rec.n_shots = n_shots;
    for (int i = 0; i < dim; ++i) {
        if (hits[i] > 0) {
            rec.counts[bitstring_for_index(i, measured.n_qubits())] = hits[i];
        }
    }
    return rec;
}

ShotRecord sample_shots(const DensityMatrix& rho, long long n_shots, std::uint64_t rng_seed) {
    return sample_shots(rho, Circuit(rho.n_qubits(), {}), n_shots, rng_seed);
}

double estimate_from_counts(const ShotRecord& rec,
                            const std::function<double(const std::string&)>& weight) {
    if (rec.n_shots < 1) {
        throw std::invalid_argument("estimate_from_counts: empty record");
    }
    double acc = 0.0;
    for (const auto& [bits, count] : rec.counts) {
        acc += weight(bits) * static_cast<double>(count);
    }
    return acc / static_cast<double>(rec.n_shots);
}

std::string ShotRecord::to_csv() const {
    std::string out;
    for (const auto& [bits, count] : counts) {
        out += bits;
        out += ',';
        out += std::to_string(count);
        out += '\n';
    }
    return out;
}

ShotRecord ShotRecord::from_csv(const std::string& text) {
    ShotRecord rec;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("ShotRecord::from_csv: missing comma in '" + line + "'");
        }
        const long long count = std::stoll(line.substr(comma + 1));
        rec.counts[line.substr(0, comma)] += count;
        rec.n_shots += count;
    }
    return rec;
}

std::vector<ShotRecord> run_job(const std::vector<Circuit>& circuits, const NoiseModel& noise,
                                const DensityMatrix& rho0, long long n_shots,
                                std::uint64_t rng_seed) {
    if (circuits.size() > static_cast<std::size_t>(kMaxCircuitsPerJob)) {
        throw std::invalid_argument("run_job: " + std::to_string(circuits.size()) +
                                    " circuits exceed the job capacity of " +
                                    std::to_string(kMaxCircuitsPerJob));
    }
    validate_noise(noise);
    std::vector<ShotRecord> records(circuits.size());
    std::exception_ptr failure;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= circuits.size() || failed.load()) {
                return;
            }
            try {
                const DensityMatrix out = evolve(circuits[i], noise, rho0);
                records[i] = sample_shots(out, n_shots, linalg::derive_seed(rng_seed, i));
            } catch (...) {
                if (!failed.exchange(true)) {
                    failure = std::current_exception();
                }
                return;
            }
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t n_workers = std::min<std::size_t>(hw, circuits.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return records;
}

}  // namespace clawe
