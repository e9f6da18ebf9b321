// Copyright 2026 The qcrank-dpqa Authors
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

// Command-line driver for encoding sweeps on the neutral-atom model.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcrank/harness.hpp"

int main(int argc, char** argv) {
    using namespace qcrank;

    CLI::App app{"QCrank encoding on a dynamically programmable atom array"};
    int n_address = 3;
    int n_data = 3;
    std::uint64_t shots = 0;
    std::string backend_name = "auto";
    std::vector<double> scales;
    int sequences = 10;
    std::uint64_t seed = 1;
    std::string out_dir = "qcrank_out";
    bool sweep = false;
    bool dump_schedule = false;
    bool ideal = false;
    std::string noise_config;
    unsigned threads = 0;

    app.add_option("--na", n_address, "address qubits")->check(CLI::Range(1, 20));
    app.add_option("--nd", n_data, "data qubits (multiple of --na)")->check(CLI::PositiveNumber);
    app.add_option("--shots", shots, "shots per run (default: sweep table value, else 25000)");
    app.add_option("--backend", backend_name, "simulator backend")
        ->check(CLI::IsMember({"exact", "traj", "auto"}));
    app.add_option("--noise-scale", scales, "noise scale factor, repeatable")->check(CLI::PositiveNumber);
    app.add_option("--sequences", sequences, "calibration/evaluation pairs per cell")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "base seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "trajectory worker threads (0: hardware)");
    app.add_flag("--sweep", sweep, "run all nine sweep configurations");
    app.add_flag("--dump-schedule", dump_schedule, "write the compiled instruction stream per configuration");
    app.add_flag("--ideal", ideal, "noiseless simulation");
    app.add_option("--noise-config", noise_config, "key = value noise overrides")->check(CLI::ExistingFile);
    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentSpec spec;
        if (sweep) {
            spec = default_sweep_spec();
            if (shots)
                for (auto& c : spec.configs)
                    c.shots = shots;
        } else {
            spec.configs = {{QCrankConfig(n_address, n_data), shots ? shots : 25000}};
        }
        const std::map<std::string, Backend> backends = {
            {"exact", Backend::exact}, {"traj", Backend::trajectories}, {"auto", Backend::automatic}};
        spec.backend = backends.at(backend_name);
        if (!scales.empty())
            spec.scales = scales;
        spec.sequences = sequences;
        spec.seed = seed;
        spec.output_dir = out_dir;
        spec.ideal = ideal;
        spec.dump_schedule = dump_schedule;
        spec.simulator.threads = threads;
        if (!noise_config.empty()) {
            std::ifstream in(noise_config);
            spec.noise = read_noise_config(in);
        }

        run_experiment(spec, [](const ResultRow& r) {
            std::printf("%-5s scale=%-4g seq=%-3d %-5s 1/c=%.4f rmse=%.4f  (%.1f s)\n", r.cfg_id.c_str(), r.noise_scale,
                        r.sequence, to_string(r.backend), 1.0 / r.c, r.rmse_calibrated, r.wall_seconds);
            std::fflush(stdout);
        });
        std::printf("results written to %s\n", out_dir.c_str());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
