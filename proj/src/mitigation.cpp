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

#include "clawe/mitigation.hpp"

#include <Eigen/QR>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace clawe {

namespace {

constexpr double kCalibratorDelta = 1e-6;
constexpr std::uint64_t kJobIndexBase = 1'000'000'000ULL;

double nan_value() {
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

RescaledObservable rescale(double raw, double its) {
    return {raw, its, raw - its};
}

double contamination(double noisy_rescaled, double ideal_rescaled, double delta) {
    if (std::abs(ideal_rescaled) <= delta) {
        throw std::domain_error(
            "contamination: calibrator ideal value " + std::to_string(ideal_rescaled) +
            " is within " + std::to_string(delta) + " of the infinite-temperature value");
    }
    return noisy_rescaled / ideal_rescaled;
}

double secondary_epsilon(double contamination_value, int chi_c) {
    if (chi_c < 1) {
        throw std::invalid_argument("secondary_epsilon: chi_c must be >= 1");
    }
    if (!(contamination_value > 0.0)) {
        throw std::domain_error("secondary_epsilon: contamination " +
                                std::to_string(contamination_value) +
                                " is non-positive (noise floor reached at this depth)");
    }
    return 1.0 - std::pow(contamination_value, 1.0 / chi_c);
}

double ideal_map(double omega_n, double eps_s, int chi) {
    if (!std::isfinite(eps_s)) {
        throw std::invalid_argument("ideal_map: noise strength is not finite");
    }
    if (eps_s >= 1.0) {
        throw std::invalid_argument("ideal_map: strength >= 1 leaves no signal to invert");
    }
    if (chi < 0) {
        throw std::invalid_argument("ideal_map: negative depth");
    }
    return std::pow(1.0 - eps_s, -chi) * omega_n;
}

double ideal_map_vector(double omega_n, const std::vector<EpsilonSegment>& segments) {
    double out = omega_n;
    for (const auto& seg : segments) {
        out = ideal_map(out, seg.epsilon, seg.chi);
    }
    return out;
}

double gate_cutoff(double eps_g) {
    if (!(eps_g > 0.0)) {
        throw std::invalid_argument("gate_cutoff: strength must be positive");
    }
    return 1.0 / eps_g;
}

double pnr_depth(int n_qubits, double eps_g) {
    if (n_qubits < 1) {
        throw std::invalid_argument("pnr_depth: need at least one qubit");
    }
    return 0.5 * n_qubits * gate_cutoff(eps_g);
}

// --- measurement plumbing ----------------------------------------------------

namespace {

// Computational-basis weights of a diagonal observable.
struct DiagonalWeights {
    std::vector<double> diag;
    int n_qubits;

    double operator()(const std::string& bits) const {
        if (static_cast<int>(bits.size()) != n_qubits) {
            throw std::invalid_argument("weight: bitstring length mismatch");
        }
        int idx = 0;
        for (char b : bits) {
            idx = (idx << 1) | (b == '1');
        }
        return diag[static_cast<std::size_t>(idx)];
    }
};

DiagonalWeights diagonal_weights(const Observable& obs) {
    const Matrix& m = obs.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j && std::abs(m(i, j)) > kValidityTol) {
                throw std::invalid_argument(
                    "shot-based estimation needs a computational-basis-diagonal observable; '" +
                    obs.label() + "' is not diagonal");
            }
        }
    }
    DiagonalWeights w;
    w.n_qubits = obs.n_qubits();
    w.diag.resize(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        w.diag[static_cast<std::size_t>(i)] = m(i, i).real();
    }
    return w;
}

}  // namespace

std::vector<Measurement> measure_observables(const std::vector<Circuit>& logical,
                                             const DensityMatrix& rho0, const Observable& obs,
                                             const ExecutionContext& ctx, std::uint64_t salt) {
    validate_noise(ctx.noise);
    const std::uint64_t base = linalg::derive_seed(ctx.seed, salt);
    const int instances = std::max(1, ctx.rco_randomizations);

    auto instance_circuit = [&](std::size_t li, int inst) {
        if (ctx.rco_randomizations <= 0) {
            return logical[li];
        }
        return randomized_compile(logical[li],
                                  linalg::derive_seed(base, li * instances + inst));
    };

    std::vector<Measurement> out(logical.size());
    if (ctx.n_shots <= 0) {
        for (std::size_t li = 0; li < logical.size(); ++li) {
            double acc = 0.0;
            for (int inst = 0; inst < instances; ++inst) {
                acc += expectation(evolve(instance_circuit(li, inst), ctx.noise, rho0), obs);
            }
            out[li] = Measurement{acc / instances, std::nullopt};
        }
        return out;
    }

    const DiagonalWeights weights = diagonal_weights(obs);
    const long long shots_per_instance = ctx.n_shots / instances;
    if (shots_per_instance < 1) {
        throw std::invalid_argument("batch_measure: fewer shots than tailoring instances");
    }
    std::vector<Circuit> executed;
    executed.reserve(logical.size() * instances);
    for (std::size_t li = 0; li < logical.size(); ++li) {
        for (int inst = 0; inst < instances; ++inst) {
            executed.push_back(instance_circuit(li, inst));
        }
    }
    // Dispatch in job-sized chunks; a fresh derived seed per job keeps the
    // result independent of how the list happens to be chunked upstream.
    std::vector<ShotRecord> records;
    records.reserve(executed.size());
    for (std::size_t start = 0, job = 0; start < executed.size();
         start += kMaxCircuitsPerJob, ++job) {
        const std::size_t end = std::min(executed.size(), start + kMaxCircuitsPerJob);
        std::vector<Circuit> chunk(executed.begin() + start, executed.begin() + end);
        auto chunk_records = run_job(chunk, ctx.noise, rho0, shots_per_instance,
                                     linalg::derive_seed(base, kJobIndexBase + job));
        for (auto& r : chunk_records) {
            records.push_back(std::move(r));
        }
    }
    for (std::size_t li = 0; li < logical.size(); ++li) {
        ShotRecord merged;
        for (int inst = 0; inst < instances; ++inst) {
            const ShotRecord& r = records[li * instances + inst];
            for (const auto& [bits, count] : r.counts) {
                merged.counts[bits] += count;
            }
            merged.n_shots += r.n_shots;
        }
        const double value = estimate_from_counts(
            merged, [&weights](const std::string& bits) { return weights(bits); });
        out[li] = Measurement{value, std::move(merged)};
    }
    return out;
}

Measurement measure_observable(const Circuit& c, const DensityMatrix& rho0,
                               const Observable& obs, const ExecutionContext& ctx,
                               std::uint64_t salt) {
    return measure_observables({c}, rho0, obs, ctx, salt)[0];
}

// --- calibration -------------------------------------------------------------

double CalibrationRecord::epsilon_scalar() const {
    if (variant != CalibrationVariant::I || aggregate.size() != 1) {
        throw std::logic_error("epsilon_scalar: not a Variant I record");
    }
    return aggregate[0];
}

std::vector<EpsilonSegment> CalibrationRecord::segments() const {
    if (variant != CalibrationVariant::II) {
        throw std::logic_error("segments: not a Variant II record");
    }
    std::vector<EpsilonSegment> segs;
    segs.reserve(points.size());
    for (const auto& p : points) {
        if (p.dropped || p.uncalibratable) {
            throw std::runtime_error("segments: fragment " + std::to_string(p.index) +
                                     " is uncalibratable");
        }
        segs.push_back({p.epsilon_s, p.chi_fragment});
    }
    return segs;
}

std::string CalibrationRecord::to_csv() const {
    std::string out = "variant,point_index,chi_c,contamination,epsilon_s\n";
    char buf[96];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%s,%d,%d,%.17g,%.17g\n",
                      variant == CalibrationVariant::I ? "I" : "II", p.index, p.chi_c,
                      p.contamination, p.epsilon_s);
        out += buf;
    }
    return out;
}

namespace {

bool has_slot_labels(const Circuit& c) {
    for (const Gate& g : c.gates) {
        if (g.is_cnot() && g.noise_slot >= 1) {
            return true;
        }
    }
    return false;
}

double checked_ideal_rescaled(const DensityMatrix& state, const Observable& obs) {
    const double its = obs.infinite_temperature_value();
    const double ideal = expectation(state, obs) - its;
    if (std::abs(ideal) <= kCalibratorDelta) {
        throw std::domain_error(
            "calibration: observable '" + obs.label() +
            "' is uninformative on the calibration state (rescaled value " +
            std::to_string(ideal) + ")");
    }
    return ideal;
}

}  // namespace

CalibrationRecord variant1_calibrate(const Circuit& target, const ExecutionContext& ctx,
                                     int n_c, const DensityMatrix& calibration_state,
                                     const Observable& calibration_observable) {
    if (n_c < 1) {
        throw std::invalid_argument("variant1_calibrate: n_c must be >= 1");
    }
    const int chi = scalar_depth(target);
    if (chi < 1) {
        throw std::invalid_argument("variant1_calibrate: target has no entangling gates");
    }
    const double its = calibration_observable.infinite_temperature_value();
    const double ideal_rescaled = checked_ideal_rescaled(calibration_state,
                                                         calibration_observable);

    const Circuit labeled = has_slot_labels(target) ? target : label_entangling_slots(target);
    std::vector<Circuit> circuits;
    circuits.reserve(n_c);
    for (int k = 1; k <= n_c; ++k) {
        const Circuit forward = power(labeled, k);
        circuits.push_back(concat(forward, inverse(forward)));
    }
    const auto measurements =
        measure_observables(circuits, calibration_state, calibration_observable, ctx, 0xCA11B001ULL);

    CalibrationRecord rec;
    rec.variant = CalibrationVariant::I;
    rec.seed = ctx.seed;
    rec.n_shots = ctx.n_shots;
    double eps_sum = 0.0;
    int retained = 0;
    for (int k = 1; k <= n_c; ++k) {
        CalibrationPoint p;
        p.index = k;
        p.chi_c = 2 * k * chi;
        p.ideal_rescaled = ideal_rescaled;
        const auto& m = measurements[static_cast<std::size_t>(k - 1)];
        p.motion_record = m.record;
        p.contamination = contamination(m.value - its, ideal_rescaled);
        if (p.contamination <= 0.0) {
            p.dropped = true;
            p.epsilon_s = nan_value();
        } else {
            p.fluctuation_warning = p.contamination > 1.0;
            p.epsilon_s = secondary_epsilon(p.contamination, p.chi_c);
            eps_sum += p.epsilon_s;
            ++retained;
        }
        rec.points.push_back(std::move(p));
    }
    if (retained == 0) {
        throw std::runtime_error(
            "variant1_calibrate: every reversal depth hit the noise floor; "
            "reduce n_c or the target depth");
    }
    rec.aggregate = {eps_sum / retained};
    return rec;
}

CalibrationRecord variant2_calibrate(const std::vector<Circuit>& fragments, int window_w,
                                     const ExecutionContext& ctx,
                                     const DensityMatrix& calibration_state,
                                     const Observable& calibration_observable) {
    if (fragments.empty()) {
        throw std::invalid_argument("variant2_calibrate: no fragments");
    }
    if (window_w < 0) {
        throw std::invalid_argument("variant2_calibrate: window_w must be >= 0");
    }
    const int n_qubits = fragments.front().n_qubits;
    for (const Circuit& f : fragments) {
        if (f.n_qubits != n_qubits) {
            throw std::invalid_argument("variant2_calibrate: fragment qubit counts differ");
        }
    }
    const double its = calibration_observable.infinite_temperature_value();

    // Make sure every entangling gate knows its position in the full target,
    // so position-dependent backends dress replayed gates correctly.
    std::vector<Circuit> labeled = fragments;
    bool any_labels = false;
    for (const Circuit& f : fragments) {
        any_labels = any_labels || has_slot_labels(f);
    }
    if (!any_labels) {
        int next_slot = 1;
        for (Circuit& f : labeled) {
            f = label_entangling_slots(f, next_slot);
            next_slot += scalar_depth(f);
        }
    }

    const int n_frag = static_cast<int>(labeled.size());
    std::vector<Circuit> executions;
    std::vector<int> baseline_at(n_frag, -1), motion_at(n_frag, -1);
    for (int i = 0; i < n_frag; ++i) {
        if (scalar_depth(labeled[i]) == 0) {
            continue;  // nothing to calibrate, no noise attaches
        }
        const int first = std::max(0, i - window_w);
        Circuit window(n_qubits, {});
        for (int j = first; j < i; ++j) {
            window = concat(window, labeled[j]);
        }
        baseline_at[i] = static_cast<int>(executions.size());
        executions.push_back(window);
        motion_at[i] = static_cast<int>(executions.size());
        executions.push_back(concat(window, concat(labeled[i], inverse(labeled[i]))));
    }
    const auto measurements = measure_observables(executions, calibration_state,
                                                 calibration_observable, ctx, 0xCA11B002ULL);

    CalibrationRecord rec;
    rec.variant = CalibrationVariant::II;
    rec.seed = ctx.seed;
    rec.n_shots = ctx.n_shots;
    for (int i = 0; i < n_frag; ++i) {
        CalibrationPoint p;
        p.index = i + 1;
        p.chi_fragment = scalar_depth(labeled[i]);
        p.chi_c = 2 * p.chi_fragment;
        if (p.chi_fragment == 0) {
            p.contamination = 1.0;
            p.epsilon_s = 0.0;
            p.ideal_rescaled = nan_value();
            rec.points.push_back(std::move(p));
            rec.aggregate.push_back(0.0);
            continue;
        }
        const auto& baseline = measurements[static_cast<std::size_t>(baseline_at[i])];
        const auto& motion = measurements[static_cast<std::size_t>(motion_at[i])];
        p.baseline_record = baseline.record;
        p.motion_record = motion.record;
        p.ideal_rescaled = baseline.value - its;  // noisy memory state is the reference
        if (std::abs(p.ideal_rescaled) <= kCalibratorDelta) {
            p.uncalibratable = true;
            p.epsilon_s = nan_value();
            p.contamination = nan_value();
        } else {
            p.contamination = contamination(motion.value - its, p.ideal_rescaled);
            if (p.contamination <= 0.0) {
                p.dropped = true;
                p.epsilon_s = nan_value();
            } else {
                p.fluctuation_warning = p.contamination > 1.0;
                p.epsilon_s = secondary_epsilon(p.contamination, p.chi_c);
            }
        }
        rec.aggregate.push_back(p.epsilon_s);
        rec.points.push_back(std::move(p));
    }
    return rec;
}

// --- zero-noise extrapolation ------------------------------------------------

std::vector<std::pair<int, Circuit>> qcna_variants(const Circuit& c, int rounds) {
    if (rounds < 2 || rounds > kQcnaRounds) {
        throw std::invalid_argument("qcna_variants: rounds must be in [2, 4]");
    }
    std::vector<std::pair<int, Circuit>> out;
    out.reserve(static_cast<std::size_t>(rounds));
    for (int r = 0; r < rounds; ++r) {
        out.emplace_back(2 * r + 1, qcna_fold(c, r));
    }
    return out;
}

namespace {

void check_scales(const std::vector<double>& scales, const std::vector<double>& values,
                  bool require_positive) {
    if (scales.size() != values.size()) {
        throw std::invalid_argument("extrapolation: scales and values differ in length");
    }
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (require_positive && !(scales[i] > 0.0)) {
            throw std::invalid_argument("extrapolation: scales must be positive");
        }
        for (std::size_t j = i + 1; j < scales.size(); ++j) {
            if (scales[i] == scales[j]) {
                throw std::invalid_argument("extrapolation: duplicate scale " +
                                            std::to_string(scales[i]));
            }
        }
    }
}

}  // namespace

double zne_poly(const std::vector<double>& scales, const std::vector<double>& values, int order) {
    if (order < 0) {
        throw std::invalid_argument("zne_poly: order must be >= 0");
    }
    check_scales(scales, values, /*require_positive=*/true);
    const int n = static_cast<int>(scales.size());
    if (n < order + 1) {
        throw std::invalid_argument("zne_poly: " + std::to_string(n) +
                                    " points cannot determine an order-" +
                                    std::to_string(order) + " fit");
    }
    Eigen::MatrixXd vandermonde(n, order + 1);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
        double term = 1.0;
        for (int p = 0; p <= order; ++p) {
            vandermonde(i, p) = term;
            term *= scales[static_cast<std::size_t>(i)];
        }
        rhs(i) = values[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd coeffs = vandermonde.colPivHouseholderQr().solve(rhs);
    return coeffs(0);  // the fitted polynomial at scale 0
}

double zne_richardson(const std::vector<double>& scales, const std::vector<double>& values,
                      int order) {
    if (order < 0) {
        throw std::invalid_argument("zne_richardson: order must be >= 0");
    }
    check_scales(scales, values, /*require_positive=*/false);
    if (static_cast<int>(scales.size()) != order + 1) {
        throw std::invalid_argument("zne_richardson: order " + std::to_string(order) +
                                    " needs exactly " + std::to_string(order + 1) + " points");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        double w = 1.0;
        for (std::size_t j = 0; j < scales.size(); ++j) {
            if (j != i) {
                w *= scales[j] / (scales[j] - scales[i]);
            }
        }
        acc += w * values[i];
    }
    return acc;
}

MitigatedEstimate make_mitigated_estimate(double mapped_rescaled, double its, double std_error,
                                          MitigationMethod method, int chi, int n_qubits,
                                          double eps_ref) {
    MitigatedEstimate est;
    est.value = mapped_rescaled + its;
    est.std_error = std_error;
    est.method = method;
    if (eps_ref > 0.0) {
        est.within_pnr = chi <= pnr_depth(n_qubits, eps_ref);
        est.beyond_cutoff = chi > gate_cutoff(eps_ref);
    }
    return est;
}

}  // namespace clawe
