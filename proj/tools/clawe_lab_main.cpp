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

#include <CLI11.hpp>
#include <iostream>

#include "clawe/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"clawe-lab: virtual-QPU noise mitigation experiments"};
    app.require_subcommand(1);

    std::string run_config, run_out;
    std::uint64_t run_seed = 0;
    bool run_seed_set = false, run_shot_free = false;
    auto* run = app.add_subcommand("run", "Run an experiment config and emit its CSV table");
    run->add_option("config", run_config, "config file path")->required();
    auto* seed_opt = run->add_option("--seed", run_seed, "override the config seed");
    run->add_flag("--shot-free", run_shot_free,
                  "compute expectation values exactly instead of sampling shots");
    run->add_option("--out", run_out, "output CSV path (default: config's out, else stdout)");

    std::string dump_config;
    auto* dump = app.add_subcommand("dump-circuit",
                                    "Print the configured benchmark's full-depth circuit");
    dump->add_option("config", dump_config, "config file path")->required();

    CLI11_PARSE(app, argc, argv);
    run_seed_set = seed_opt->count() > 0;

    try {
        if (*run) {
            clawe::ExperimentConfig cfg = clawe::parse_config_file(run_config);
            if (run_seed_set) {
                cfg.seed = run_seed;
            }
            if (run_shot_free) {
                cfg.shot_free = true;
            }
            const clawe::ResultTable table = clawe::run_experiment(cfg);
            const std::string out = !run_out.empty() ? run_out : cfg.out_path;
            if (out.empty()) {
                std::cout << clawe::table_to_csv(table);
            } else {
                clawe::emit_csv(table, out);
                std::cerr << "wrote " << table.rows.size() << " rows to " << out << "\n";
            }
        } else if (*dump) {
            const clawe::ExperimentConfig cfg = clawe::parse_config_file(dump_config);
            std::cout << clawe::circuit_to_text(clawe::benchmark_target_circuit(cfg));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
