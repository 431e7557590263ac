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

#include "clawe/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "clawe/bootstrap.hpp"
#include "clawe/observables.hpp"

namespace clawe {

// --- config ------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void config_error(const std::string& field, const std::string& why) {
    throw std::invalid_argument("config: " + field + ": " + why);
}

double parse_double(const std::string& field, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) {
            config_error(field, "trailing characters in '" + v + "'");
        }
        return d;
    } catch (const std::invalid_argument&) {
        config_error(field, "not a number: '" + v + "'");
    } catch (const std::out_of_range&) {
        config_error(field, "out of range: '" + v + "'");
    }
}

long long parse_int(const std::string& field, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) {
            config_error(field, "trailing characters in '" + v + "'");
        }
        return i;
    } catch (const std::invalid_argument&) {
        config_error(field, "not an integer: '" + v + "'");
    } catch (const std::out_of_range&) {
        config_error(field, "out of range: '" + v + "'");
    }
}

bool parse_bool(const std::string& field, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    config_error(field, "not a boolean: '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream stream(s);
    while (std::getline(stream, item, sep)) {
        out.push_back(item);
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    bool have_kind = false;
    std::string section;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                config_error("line " + std::to_string(line_no), "unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section != "experiment" && section != "schedule" && section != "noise" &&
                section != "mitigation") {
                config_error(section, "unknown section");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            config_error("line " + std::to_string(line_no), "expected `key = value`");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string field = section + "." + key;
        if (section == "experiment") {
            if (key == "kind") {
                have_kind = true;
                if (value == "overlap") cfg.kind = ExperimentConfig::Kind::Overlap;
                else if (value == "renyi") cfg.kind = ExperimentConfig::Kind::Renyi;
                else if (value == "calibrate-v1") cfg.kind = ExperimentConfig::Kind::CalibrateV1;
                else if (value == "calibrate-v2") cfg.kind = ExperimentConfig::Kind::CalibrateV2;
                else if (value == "zne") cfg.kind = ExperimentConfig::Kind::Zne;
                else config_error(field, "unknown experiment kind '" + value + "'");
            } else if (key == "benchmark") {
                if (value == "overlap") cfg.benchmark = ExperimentConfig::Benchmark::Overlap;
                else if (value == "renyi") cfg.benchmark = ExperimentConfig::Benchmark::Renyi;
                else config_error(field, "unknown benchmark '" + value + "'");
            } else if (key == "seed") {
                cfg.seed = static_cast<std::uint64_t>(parse_int(field, value));
            } else if (key == "n_shots") {
                cfg.n_shots = parse_int(field, value);
            } else if (key == "shot_free") {
                cfg.shot_free = parse_bool(field, value);
            } else if (key == "n_resamples") {
                cfg.n_resamples = static_cast<int>(parse_int(field, value));
            } else if (key == "out") {
                cfg.out_path = value;
            } else {
                config_error(field, "unknown key");
            }
        } else if (section == "schedule") {
            if (key == "u_tilde") {
                const auto colon = value.find(':');
                const std::string head = value.substr(0, colon);
                if (head == "constant") {
                    if (colon == std::string::npos) {
                        config_error(field, "expected constant:<value>");
                    }
                    cfg.u_constant = true;
                    cfg.u_value = parse_double(field, value.substr(colon + 1));
                } else if (head == "piecewise") {
                    if (colon == std::string::npos) {
                        config_error(field, "expected piecewise:<t>:<u>,...");
                    }
                    cfg.u_constant = false;
                    cfg.u_breakpoints.clear();
                    for (const std::string& pair : split(value.substr(colon + 1), ',')) {
                        const auto c2 = pair.find(':');
                        if (c2 == std::string::npos) {
                            config_error(field, "breakpoint '" + pair + "' is not <t>:<u>");
                        }
                        cfg.u_breakpoints.emplace_back(parse_double(field, pair.substr(0, c2)),
                                                       parse_double(field, pair.substr(c2 + 1)));
                    }
                } else {
                    config_error(field, "expected constant:... or piecewise:...");
                }
            } else if (key == "t_final") {
                cfg.t_final = parse_double(field, value);
            } else if (key == "n_steps") {
                cfg.n_steps = static_cast<int>(parse_int(field, value));
            } else if (key == "n_t") {
                cfg.n_t = static_cast<int>(parse_int(field, value));
            } else {
                config_error(field, "unknown key");
            }
        } else if (section == "noise") {
            if (key == "model") {
                if (value == "ideal") cfg.noise_kind = ExperimentConfig::NoiseKind::Ideal;
                else if (value == "global_constant")
                    cfg.noise_kind = ExperimentConfig::NoiseKind::GlobalConstant;
                else if (value == "global_vector")
                    cfg.noise_kind = ExperimentConfig::NoiseKind::GlobalVector;
                else if (value == "local_after_cnot")
                    cfg.noise_kind = ExperimentConfig::NoiseKind::LocalAfterCnot;
                else config_error(field, "unknown noise model '" + value + "'");
            } else if (key == "epsilon") {
                cfg.epsilon = parse_double(field, value);
            } else if (key == "epsilon_segments") {
                cfg.epsilon_segments.clear();
                for (const std::string& seg : split(value, ',')) {
                    const auto x = seg.find('x');
                    if (x == std::string::npos) {
                        config_error(field, "segment '" + seg + "' is not <eps>x<count>");
                    }
                    cfg.epsilon_segments.emplace_back(
                        static_cast<int>(parse_int(field, seg.substr(x + 1))),
                        parse_double(field, seg.substr(0, x)));
                }
            } else if (key == "p") {
                cfg.local_p = parse_double(field, value);
            } else if (key == "phi") {
                cfg.local_phi = parse_double(field, value);
            } else if (key == "rco_randomizations") {
                cfg.rco_randomizations = static_cast<int>(parse_int(field, value));
            } else {
                config_error(field, "unknown key");
            }
        } else if (section == "mitigation") {
            if (key == "n_c") {
                cfg.n_c = static_cast<int>(parse_int(field, value));
            } else if (key == "window_w") {
                cfg.window_w = value == "all" ? -1 : static_cast<int>(parse_int(field, value));
            } else if (key == "fragments") {
                if (value == "per_step") {
                    cfg.fragments_per_step = true;
                    cfg.fragment_boundaries.clear();
                } else {
                    cfg.fragments_per_step = false;
                    cfg.fragment_boundaries.clear();
                    for (const std::string& b : split(value, ',')) {
                        cfg.fragment_boundaries.push_back(
                            static_cast<int>(parse_int(field, trim(b))));
                    }
                }
            } else if (key == "qcna_rounds") {
                cfg.qcna_rounds = static_cast<int>(parse_int(field, value));
            } else if (key == "digitization_samples") {
                cfg.digitization_samples = static_cast<int>(parse_int(field, value));
            } else {
                config_error(field, "unknown key");
            }
        } else {
            config_error("line " + std::to_string(line_no), "key outside any section");
        }
    }
    if (!have_kind) {
        config_error("experiment.kind", "missing (required)");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void ExperimentConfig::validate() const {
    auto require = [](bool ok, const std::string& field, const std::string& why) {
        if (!ok) {
            config_error(field, why);
        }
    };
    require(n_steps >= 1, "schedule.n_steps", "must be >= 1");
    require(n_t >= 1, "schedule.n_t", "must be >= 1");
    require(t_final >= 0, "schedule.t_final", "must be >= 0");
    require(u_constant || !u_breakpoints.empty(), "schedule.u_tilde",
            "piecewise schedule needs breakpoints");
    require(shot_free || n_shots >= 1, "experiment.n_shots", "must be >= 1");
    require(n_resamples >= 2, "experiment.n_resamples", "must be >= 2");
    require(epsilon >= 0 && epsilon <= 1, "noise.epsilon", "must be in [0, 1]");
    require(local_p >= 0 && local_p <= 1, "noise.p", "must be in [0, 1]");
    require(rco_randomizations >= 0, "noise.rco_randomizations", "must be >= 0");
    require(noise_kind != NoiseKind::GlobalVector || !epsilon_segments.empty(),
            "noise.epsilon_segments", "required for the global_vector model");
    require(n_c >= 1, "mitigation.n_c", "must be >= 1");
    require(window_w >= -1, "mitigation.window_w", "must be >= 0 or 'all'");
    require(qcna_rounds >= 2 && qcna_rounds <= 4, "mitigation.qcna_rounds", "must be in [2, 4]");
    require(digitization_samples >= 2, "mitigation.digitization_samples", "must be >= 2");
}

FHSchedule ExperimentConfig::schedule() const {
    if (u_constant) {
        return FHSchedule::constant(u_value, t_final);
    }
    return FHSchedule::piecewise_linear(u_breakpoints, t_final);
}

NoiseModel ExperimentConfig::noise() const {
    switch (noise_kind) {
        case NoiseKind::Ideal: return IdealNoise{};
        case NoiseKind::GlobalConstant: return GlobalConstantNoise{epsilon};
        case NoiseKind::GlobalVector: return GlobalVectorNoise::from_segments(epsilon_segments);
        case NoiseKind::LocalAfterCnot:
            return LocalAfterCnotNoise{KrausChannel::two_qubit_depolarizing(local_p), local_phi};
    }
    throw std::logic_error("unreachable noise kind");
}

ExecutionContext ExperimentConfig::execution_context() const {
    ExecutionContext ctx;
    ctx.noise = noise();
    ctx.n_shots = shot_free ? 0 : n_shots;
    ctx.seed = seed;
    ctx.rco_randomizations = rco_randomizations;
    return ctx;
}

// --- tables ------------------------------------------------------------------

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string table_to_csv(const ResultTable& table) {
    std::string out;
    auto join = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += cells[i];
        }
        out += '\n';
    };
    join(table.header);
    for (const auto& row : table.rows) {
        join(row);
    }
    return out;
}

ResultTable parse_csv_text(const std::string& text) {
    ResultTable table;
    std::istringstream stream(text);
    std::string line;
    bool first = true;
    while (std::getline(stream, line)) {
        if (line.empty()) {
            continue;
        }
        auto cells = split(line, ',');
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != table.header.size()) {
                throw std::invalid_argument("csv row has " + std::to_string(cells.size()) +
                                            " cells, header has " +
                                            std::to_string(table.header.size()));
            }
            table.rows.push_back(std::move(cells));
        }
    }
    if (first) {
        throw std::invalid_argument("csv text has no header row");
    }
    return table;
}

void emit_csv(const ResultTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << table_to_csv(table);
    if (!out) {
        throw std::runtime_error("writing '" + path + "' failed");
    }
}

ResultTable parse_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open csv file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_csv_text(buf.str());
}

// --- benchmark setups ----------------------------------------------------------

namespace {

using WeightFn = std::function<double(const std::string&)>;

// Everything run_experiment needs to drive one benchmark family.
struct BenchmarkSetup {
    int n_qubits = 2;
    std::vector<Circuit> step_targets;  // 1..n_steps, slots labeled
    Circuit full_target;
    std::vector<Circuit> fragments;
    // Fragments participating in each step's inversion, as (index, depth).
    std::vector<std::vector<std::pair<int, int>>> step_participation;
    std::vector<int> step_chi;
    Observable obs = electronic_overlap();
    WeightFn weight;
    DensityMatrix rho0 = zero_state(2);
    double its = 0.0;
    bool is_renyi = false;
    std::vector<double> ideal_values;      // exact-propagator trajectory
    std::vector<double> noiseless_values;  // digitized noiseless trajectory
    std::vector<DigitizationBand> bands;
};

double entropy_of_observable_value(double singlet_probability) {
    return -0.5 * std::log(clip_purity(1.0 - 2.0 * singlet_probability));
}

// Reported scalar for a raw measured-observable value.
double report_value(const BenchmarkSetup& setup, double obs_value) {
    return setup.is_renyi ? entropy_of_observable_value(obs_value) : obs_value;
}

std::vector<std::pair<int, int>> walk_prefix(const std::vector<int>& frag_depths,
                                             int chi_prefix) {
    std::vector<std::pair<int, int>> used;
    int remaining = chi_prefix;
    for (std::size_t i = 0; i < frag_depths.size() && remaining > 0; ++i) {
        const int take = std::min(remaining, frag_depths[i]);
        if (take > 0) {
            used.emplace_back(static_cast<int>(i), take);
        }
        remaining -= take;
    }
    if (remaining > 0) {
        throw std::logic_error("fragment depths do not cover the step prefix");
    }
    return used;
}

BenchmarkSetup make_overlap_setup(const ExperimentConfig& cfg) {
    BenchmarkSetup setup;
    const FHSchedule schedule = cfg.schedule();
    PFAConfig pfa;
    pfa.n_steps = cfg.n_steps;
    pfa.n_t = cfg.n_t;

    setup.n_qubits = 2;
    setup.obs = electronic_overlap();
    setup.weight = electronic_overlap_weight;
    setup.rho0 = zero_state(2);
    setup.its = setup.obs.infinite_temperature_value();
    setup.is_renyi = false;

    for (int k = 1; k <= cfg.n_steps; ++k) {
        setup.step_targets.push_back(label_entangling_slots(pfa_circuit(schedule, pfa, k)));
        setup.step_chi.push_back(2 * cfg.n_t * k);
    }
    setup.full_target = setup.step_targets.back();

    std::vector<int> boundaries = cfg.fragment_boundaries;
    if (cfg.fragments_per_step) {
        boundaries.clear();
        for (int j = 1; j < cfg.n_steps; ++j) {
            boundaries.push_back(2 + 5 * cfg.n_t * j);
        }
    }
    setup.fragments = fragment(setup.full_target, boundaries);
    std::vector<int> depths;
    for (const Circuit& f : setup.fragments) {
        depths.push_back(scalar_depth(f));
    }
    for (int k = 1; k <= cfg.n_steps; ++k) {
        setup.step_participation.push_back(walk_prefix(depths, setup.step_chi[k - 1]));
    }

    const DensityMatrix plus =
        apply_unitary(setup.rho0, circuit_unitary(initial_state_circuit()));
    for (int k = 1; k <= cfg.n_steps; ++k) {
        const double t_k = schedule.t_final() * k / cfg.n_steps;
        const Matrix u_exact = exact_evolution(schedule, t_k);
        setup.ideal_values.push_back(expectation(apply_unitary(plus, u_exact), setup.obs));
        setup.noiseless_values.push_back(expectation(
            evolve(setup.step_targets[k - 1], IdealNoise{}, setup.rho0), setup.obs));
    }
    setup.bands = digitization_error(schedule, pfa, setup.obs, cfg.digitization_samples,
                                     linalg::derive_seed(cfg.seed, 0xD161ULL));
    return setup;
}

BenchmarkSetup make_renyi_setup(const ExperimentConfig& cfg) {
    BenchmarkSetup setup;
    const FHSchedule schedule = cfg.schedule();
    PFAConfig pfa;
    pfa.n_steps = cfg.n_steps;
    pfa.n_t = cfg.n_t;

    setup.n_qubits = 4;
    setup.obs = bba_singlet_projector();
    setup.weight = singlet_weight;
    setup.rho0 = zero_state(4);
    setup.its = setup.obs.infinite_temperature_value();
    setup.is_renyi = true;

    for (int k = 1; k <= cfg.n_steps; ++k) {
        const Circuit base = label_entangling_slots(pfa_circuit(schedule, pfa, k));
        setup.step_targets.push_back(bba_circuit(base));
        setup.step_chi.push_back(4 * cfg.n_t * k + 1);
    }
    setup.full_target = setup.step_targets.back();

    std::vector<int> boundaries = cfg.fragment_boundaries;
    const bool per_step = cfg.fragments_per_step;
    if (per_step) {
        boundaries.clear();
        for (int j = 1; j <= cfg.n_steps; ++j) {
            boundaries.push_back(4 + 10 * cfg.n_t * j);  // after step j's two copies
        }
    }
    setup.fragments = fragment(setup.full_target, boundaries);
    std::vector<int> depths;
    for (const Circuit& f : setup.fragments) {
        depths.push_back(scalar_depth(f));
    }
    for (int k = 1; k <= cfg.n_steps; ++k) {
        if (per_step) {
            // Step k replays fragments 1..k plus the final Bell stage.
            std::vector<std::pair<int, int>> used;
            for (int i = 0; i < k; ++i) {
                used.emplace_back(i, depths[static_cast<std::size_t>(i)]);
            }
            used.emplace_back(static_cast<int>(depths.size()) - 1, depths.back());
            setup.step_participation.push_back(std::move(used));
        } else {
            setup.step_participation.push_back(walk_prefix(depths, setup.step_chi[k - 1]));
        }
    }

    const DensityMatrix zero2 = zero_state(2);
    const DensityMatrix plus = apply_unitary(zero2, circuit_unitary(initial_state_circuit()));
    for (int k = 1; k <= cfg.n_steps; ++k) {
        const double t_k = schedule.t_final() * k / cfg.n_steps;
        setup.ideal_values.push_back(
            renyi_direct(apply_unitary(plus, exact_evolution(schedule, t_k))).entropy);
        const Circuit base = pfa_circuit(schedule, pfa, k);
        setup.noiseless_values.push_back(
            renyi_direct(evolve(base, IdealNoise{}, zero2)).entropy);
    }

    // Ordering spread of the noiseless entropy trajectory.
    for (int step = 1; step <= cfg.n_steps; ++step) {
        std::vector<double> values;
        for (int s = 0; s < cfg.digitization_samples; ++s) {
            std::mt19937_64 rng(linalg::derive_seed(linalg::derive_seed(cfg.seed, 0xD162ULL),
                                                    (step - 1) * 1000003ULL + s));
            std::uniform_int_distribution<int> dist(0, kStepOrderingCount - 1);
            PFAConfig sampled = pfa;
            sampled.orderings.assign(cfg.n_steps, StepOrdering::XXZ);
            for (int k = 0; k < step; ++k) {
                sampled.orderings[k] = static_cast<StepOrdering>(dist(rng));
            }
            values.push_back(
                renyi_direct(evolve(pfa_circuit(schedule, sampled, step), IdealNoise{}, zero2))
                    .entropy);
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
        setup.bands.push_back(band);
    }
    return setup;
}

BenchmarkSetup make_setup(const ExperimentConfig& cfg, ExperimentConfig::Benchmark which) {
    return which == ExperimentConfig::Benchmark::Overlap ? make_overlap_setup(cfg)
                                                         : make_renyi_setup(cfg);
}

// Pipeline pieces reused by the mitigated-column bootstrap errors. The
// record layout is [target, calibration records...].

double resampled_value(const ShotRecord& rec, const WeightFn& weight) {
    return estimate_from_counts(rec, weight);
}

double clawe1_from_records(const std::vector<ShotRecord>& rs, const BenchmarkSetup& setup,
                           const CalibrationRecord& calib, int chi) {
    double eps_sum = 0.0;
    int kept = 0;
    for (std::size_t j = 0; j < calib.points.size(); ++j) {
        const CalibrationPoint& p = calib.points[j];
        const double noisy = resampled_value(rs[1 + j], setup.weight) - setup.its;
        const double c = contamination(noisy, p.ideal_rescaled);
        if (c <= 0.0) {
            continue;
        }
        eps_sum += secondary_epsilon(c, p.chi_c);
        ++kept;
    }
    if (kept == 0) {
        throw std::domain_error("all calibration points at the noise floor");
    }
    const double omega = resampled_value(rs[0], setup.weight) - setup.its;
    const double mapped = ideal_map(omega, eps_sum / kept, chi);
    return report_value(setup, mapped + setup.its);
}

}  // namespace

Circuit benchmark_target_circuit(const ExperimentConfig& cfg) {
    const FHSchedule schedule = cfg.schedule();
    PFAConfig pfa;
    pfa.n_steps = cfg.n_steps;
    pfa.n_t = cfg.n_t;
    const Circuit base = label_entangling_slots(pfa_circuit(schedule, pfa, cfg.n_steps));
    const bool renyi = (cfg.kind == ExperimentConfig::Kind::Renyi) ||
                       (cfg.kind != ExperimentConfig::Kind::Overlap &&
                        cfg.benchmark == ExperimentConfig::Benchmark::Renyi);
    return renyi ? bba_circuit(base) : base;
}

namespace {

ResultTable run_calibration_experiment(const ExperimentConfig& cfg) {
    const auto which = cfg.benchmark;
    const BenchmarkSetup setup = make_setup(cfg, which);
    const ExecutionContext ctx = cfg.execution_context();
    CalibrationRecord rec;
    if (cfg.kind == ExperimentConfig::Kind::CalibrateV1) {
        rec = variant1_calibrate(setup.full_target, ctx, cfg.n_c, setup.rho0, setup.obs);
    } else {
        rec = variant2_calibrate(setup.fragments, cfg.window_w < 0 ? 1 << 20 : cfg.window_w,
                                 ctx, setup.rho0, setup.obs);
    }
    ResultTable table;
    table.header = {"variant", "point_index", "chi_c", "contamination", "epsilon_s"};
    for (const auto& p : rec.points) {
        table.rows.push_back({rec.variant == CalibrationVariant::I ? "I" : "II",
                              std::to_string(p.index), std::to_string(p.chi_c),
                              format_double(p.contamination), format_double(p.epsilon_s)});
    }
    return table;
}

ResultTable run_zne_experiment(const ExperimentConfig& cfg) {
    const BenchmarkSetup setup = make_setup(cfg, cfg.benchmark);
    const ExecutionContext ctx = cfg.execution_context();
    const bool shots = ctx.n_shots > 0;

    std::vector<double> scales;
    ResultTable table;
    table.header = {"step", "chi"};
    for (int r = 0; r < cfg.qcna_rounds; ++r) {
        scales.push_back(2 * r + 1);
        table.header.push_back("scale_" + std::to_string(2 * r + 1));
        table.header.push_back("scale_" + std::to_string(2 * r + 1) + "_err");
    }
    table.header.insert(table.header.end(),
                        {"zne_poly", "zne_poly_err", "zne_richardson", "zne_richardson_err"});

    std::vector<Circuit> circuits;
    for (int k = 1; k <= cfg.n_steps; ++k) {
        for (auto& variant : qcna_variants(setup.step_targets[k - 1], cfg.qcna_rounds)) {
            circuits.push_back(std::move(variant.second));
        }
    }
    const auto measured =
        measure_observables(circuits, setup.rho0, setup.obs, ctx, 0x2AE5ULL);

    const int n_rich = std::min(3, cfg.qcna_rounds);
    for (int k = 1; k <= cfg.n_steps; ++k) {
        std::vector<double> values;
        std::vector<ShotRecord> records;
        for (int r = 0; r < cfg.qcna_rounds; ++r) {
            const auto& m = measured[static_cast<std::size_t>((k - 1) * cfg.qcna_rounds + r)];
            values.push_back(m.value);
            if (shots) {
                records.push_back(*m.record);
            }
        }
        const double poly = zne_poly(scales, values, cfg.qcna_rounds - 1);
        const double rich =
            zne_richardson({scales.begin(), scales.begin() + n_rich},
                           {values.begin(), values.begin() + n_rich}, n_rich - 1);

        std::vector<std::string> row = {std::to_string(k),
                                        std::to_string(setup.step_chi[k - 1])};
        std::vector<double> errs(static_cast<std::size_t>(cfg.qcna_rounds), 0.0);
        double poly_err = 0.0, rich_err = 0.0;
        if (shots) {
            for (int r = 0; r < cfg.qcna_rounds; ++r) {
                errs[r] = bootstrap(
                              records[r],
                              [&](const ShotRecord& rec) {
                                  return resampled_value(rec, setup.weight);
                              },
                              cfg.n_resamples, linalg::derive_seed(cfg.seed, 7000 + 10 * k + r))
                              .std_error;
            }
            auto zne_pipeline = [&](bool richardson) {
                return propagate_through_mitigation(
                    records,
                    [&, richardson](const std::vector<ShotRecord>& rs) {
                        std::vector<double> vs;
                        vs.reserve(rs.size());
                        for (const auto& r : rs) {
                            vs.push_back(resampled_value(r, setup.weight));
                        }
                        if (richardson) {
                            return zne_richardson({scales.begin(), scales.begin() + n_rich},
                                                  {vs.begin(), vs.begin() + n_rich},
                                                  n_rich - 1);
                        }
                        return zne_poly(scales, vs, cfg.qcna_rounds - 1);
                    },
                    cfg.n_resamples, linalg::derive_seed(cfg.seed, 7100 + k));
            };
            poly_err = zne_pipeline(false).std_error;
            rich_err = zne_pipeline(true).std_error;
        }
        for (int r = 0; r < cfg.qcna_rounds; ++r) {
            row.push_back(format_double(values[r]));
            row.push_back(format_double(errs[r]));
        }
        row.push_back(format_double(poly));
        row.push_back(format_double(poly_err));
        row.push_back(format_double(rich));
        row.push_back(format_double(rich_err));
        table.rows.push_back(std::move(row));
    }
    return table;
}

ResultTable run_benchmark_experiment(const ExperimentConfig& cfg) {
    const auto which = cfg.kind == ExperimentConfig::Kind::Renyi
                           ? ExperimentConfig::Benchmark::Renyi
                           : ExperimentConfig::Benchmark::Overlap;
    const BenchmarkSetup setup = make_setup(cfg, which);
    const ExecutionContext ctx = cfg.execution_context();
    const bool shots = ctx.n_shots > 0;

    // Target executions (the per-step benchmark circuits).
    const auto target_measured =
        measure_observables(setup.step_targets, setup.rho0, setup.obs, ctx, 0x7A26ULL);

    // ZNE executions: the amplification rounds per step.
    std::vector<Circuit> zne_circuits;
    for (int k = 1; k <= cfg.n_steps; ++k) {
        for (auto& variant : qcna_variants(setup.step_targets[k - 1], cfg.qcna_rounds)) {
            zne_circuits.push_back(std::move(variant.second));
        }
    }
    const auto zne_measured =
        measure_observables(zne_circuits, setup.rho0, setup.obs, ctx, 0x2AE5ULL);
    std::vector<double> scales;
    for (int r = 0; r < cfg.qcna_rounds; ++r) {
        scales.push_back(2 * r + 1);
    }
    const int n_rich = std::min(3, cfg.qcna_rounds);

    // Calibrations on the full-depth target.
    const CalibrationRecord calib1 =
        variant1_calibrate(setup.full_target, ctx, cfg.n_c, setup.rho0, setup.obs);
    const double eps1 = calib1.epsilon_scalar();

    const CalibrationRecord calib2 =
        variant2_calibrate(setup.fragments, cfg.window_w < 0 ? 1 << 20 : cfg.window_w, ctx,
                           setup.rho0, setup.obs);

    ResultTable table;
    table.header = {"step",          "chi",
                    "ideal",         "noiseless_pfa",
                    "noisy",         "noisy_err",
                    "clawe1",        "clawe1_err",
                    "clawe2",        "clawe2_err",
                    "zne_poly",      "zne_poly_err",
                    "zne_richardson", "zne_richardson_err",
                    "eps_clawe1",    "within_pnr",
                    "beyond_cutoff", "zne_within_pnr"};
    if (setup.is_renyi) {
        for (const char* m :
             {"noisy", "clawe1", "clawe2", "zne_poly", "zne_richardson"}) {
            table.header.push_back(std::string("purity_") + m + "_raw");
            table.header.push_back(std::string("purity_") + m + "_clipped");
        }
    }
    table.header.insert(table.header.end(), {"dig_lo", "dig_hi", "dig_std"});

    for (int k = 1; k <= cfg.n_steps; ++k) {
        const int chi = setup.step_chi[k - 1];
        const auto& target = target_measured[static_cast<std::size_t>(k - 1)];
        const double omega_n = target.value - setup.its;

        // Raw (observable-scale) mitigated values.
        const double map1 = ideal_map(omega_n, eps1, chi) + setup.its;

        double map2 = std::numeric_limits<double>::quiet_NaN();
        bool clawe2_ok = true;
        std::vector<EpsilonSegment> segs;
        try {
            for (const auto& [frag, used_chi] : setup.step_participation[k - 1]) {
                const CalibrationPoint& p = calib2.points[static_cast<std::size_t>(frag)];
                if (p.dropped || p.uncalibratable) {
                    throw std::runtime_error("fragment uncalibratable");
                }
                segs.push_back({p.epsilon_s, used_chi});
            }
            map2 = ideal_map_vector(omega_n, segs) + setup.its;
        } catch (const std::exception&) {
            clawe2_ok = false;
        }

        std::vector<double> zne_values;
        std::vector<ShotRecord> zne_records;
        for (int r = 0; r < cfg.qcna_rounds; ++r) {
            const auto& m = zne_measured[static_cast<std::size_t>((k - 1) * cfg.qcna_rounds + r)];
            zne_values.push_back(m.value);
            if (shots) {
                zne_records.push_back(*m.record);
            }
        }
        const double poly = zne_poly(scales, zne_values, cfg.qcna_rounds - 1);
        const double rich = zne_richardson({scales.begin(), scales.begin() + n_rich},
                                           {zne_values.begin(), zne_values.begin() + n_rich},
                                           n_rich - 1);

        // Reported values (entropy for the two-copy benchmark).
        const double noisy_rep = report_value(setup, target.value);
        const double clawe1_rep = report_value(setup, map1);
        const double clawe2_rep =
            clawe2_ok ? report_value(setup, map2) : std::numeric_limits<double>::quiet_NaN();
        const double poly_rep = report_value(setup, poly);
        const double rich_rep = report_value(setup, rich);

        // Bootstrap errors.
        double noisy_err = 0.0, clawe1_err = 0.0, clawe2_err = 0.0;
        double poly_err = 0.0, rich_err = 0.0;
        if (shots) {
            noisy_err = bootstrap(
                            *target.record,
                            [&](const ShotRecord& rec) {
                                return report_value(setup, resampled_value(rec, setup.weight));
                            },
                            cfg.n_resamples, linalg::derive_seed(cfg.seed, 8000 + k))
                            .std_error;

            std::vector<ShotRecord> c1_records = {*target.record};
            for (const auto& p : calib1.points) {
                c1_records.push_back(*p.motion_record);
            }
            clawe1_err = propagate_through_mitigation(
                             c1_records,
                             [&](const std::vector<ShotRecord>& rs) {
                                 return clawe1_from_records(rs, setup, calib1, chi);
                             },
                             cfg.n_resamples, linalg::derive_seed(cfg.seed, 8100 + k))
                             .std_error;

            if (clawe2_ok) {
                // [target, (baseline, motion) per participating fragment]
                std::vector<ShotRecord> c2_records = {*target.record};
                const auto participation = setup.step_participation[k - 1];
                for (const auto& [frag, used_chi] : participation) {
                    const CalibrationPoint& p = calib2.points[static_cast<std::size_t>(frag)];
                    c2_records.push_back(*p.baseline_record);
                    c2_records.push_back(*p.motion_record);
                }
                clawe2_err =
                    propagate_through_mitigation(
                        c2_records,
                        [&](const std::vector<ShotRecord>& rs) {
                            std::vector<EpsilonSegment> rsegs;
                            for (std::size_t idx = 0; idx < participation.size(); ++idx) {
                                const auto& [frag, used_chi] = participation[idx];
                                const CalibrationPoint& p =
                                    calib2.points[static_cast<std::size_t>(frag)];
                                const double base =
                                    resampled_value(rs[1 + 2 * idx], setup.weight) - setup.its;
                                const double motion =
                                    resampled_value(rs[2 + 2 * idx], setup.weight) - setup.its;
                                const double c = contamination(motion, base);
                                rsegs.push_back({secondary_epsilon(c, p.chi_c), used_chi});
                            }
                            const double omega =
                                resampled_value(rs[0], setup.weight) - setup.its;
                            return report_value(setup,
                                                ideal_map_vector(omega, rsegs) + setup.its);
                        },
                        cfg.n_resamples, linalg::derive_seed(cfg.seed, 8200 + k))
                        .std_error;
            }

            auto zne_stat = [&](const std::vector<ShotRecord>& rs, bool richardson) {
                std::vector<double> vs;
                vs.reserve(rs.size());
                for (const auto& r : rs) {
                    vs.push_back(resampled_value(r, setup.weight));
                }
                const double extrap =
                    richardson
                        ? zne_richardson({scales.begin(), scales.begin() + n_rich},
                                         {vs.begin(), vs.begin() + n_rich}, n_rich - 1)
                        : zne_poly(scales, vs, cfg.qcna_rounds - 1);
                return report_value(setup, extrap);
            };
            poly_err = propagate_through_mitigation(
                           zne_records,
                           [&](const std::vector<ShotRecord>& rs) { return zne_stat(rs, false); },
                           cfg.n_resamples, linalg::derive_seed(cfg.seed, 8300 + k))
                           .std_error;
            rich_err = propagate_through_mitigation(
                           zne_records,
                           [&](const std::vector<ShotRecord>& rs) { return zne_stat(rs, true); },
                           cfg.n_resamples, linalg::derive_seed(cfg.seed, 8400 + k))
                           .std_error;
        }

        const MitigatedEstimate flags = make_mitigated_estimate(
            0.0, 0.0, 0.0, MitigationMethod::ClaweI, chi, setup.n_qubits, eps1);
        const bool zne_within_pnr =
            eps1 > 0.0 ? (2 * cfg.qcna_rounds - 1) * chi <= pnr_depth(setup.n_qubits, eps1)
                       : true;

        std::vector<std::string> row = {std::to_string(k), std::to_string(chi),
                                        format_double(setup.ideal_values[k - 1]),
                                        format_double(setup.noiseless_values[k - 1]),
                                        format_double(noisy_rep), format_double(noisy_err),
                                        format_double(clawe1_rep), format_double(clawe1_err),
                                        format_double(clawe2_rep), format_double(clawe2_err),
                                        format_double(poly_rep), format_double(poly_err),
                                        format_double(rich_rep), format_double(rich_err),
                                        format_double(eps1),
                                        flags.within_pnr ? "1" : "0",
                                        flags.beyond_cutoff ? "1" : "0",
                                        zne_within_pnr ? "1" : "0"};
        if (setup.is_renyi) {
            for (double v : {target.value, map1, map2, poly, rich}) {
                const double raw = 1.0 - 2.0 * v;
                row.push_back(format_double(raw));
                row.push_back(format_double(clip_purity(raw)));
            }
        }
        const DigitizationBand& band = setup.bands[static_cast<std::size_t>(k - 1)];
        row.push_back(format_double(band.lo));
        row.push_back(format_double(band.hi));
        row.push_back(format_double(band.stddev));
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace

ResultTable run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    switch (cfg.kind) {
        case ExperimentConfig::Kind::Overlap:
        case ExperimentConfig::Kind::Renyi:
            return run_benchmark_experiment(cfg);
        case ExperimentConfig::Kind::CalibrateV1:
        case ExperimentConfig::Kind::CalibrateV2:
            return run_calibration_experiment(cfg);
        case ExperimentConfig::Kind::Zne:
            return run_zne_experiment(cfg);
    }
    throw std::logic_error("unreachable experiment kind");
}

}  // namespace clawe
