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

#ifndef QCRANK_HARNESS_HPP
#define QCRANK_HARNESS_HPP

// Experiment driver: for every (configuration, noise scale, sequence) cell
// draw a calibration and an evaluation input, compile both, simulate them
// and score the evaluation run with the calibration factor of the first.
//
// Data and simulation streams are keyed by (seed, n_a, n_d, sequence, role)
// and not by the noise scale, so a scale sweep reuses the same inputs and
// the same random numbers.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qcrank/analysis.hpp"
#include "qcrank/angles.hpp"
#include "qcrank/builders.hpp"
#include "qcrank/config.hpp"
#include "qcrank/dpqa.hpp"
#include "qcrank/noise.hpp"
#include "qcrank/rng.hpp"
#include "qcrank/simulator.hpp"

namespace qcrank {

inline constexpr const char* rng_name = "splitmix64-v1";

struct ConfigShots {
    QCrankConfig config;
    std::uint64_t shots;
};

struct ExperimentSpec {
    std::vector<ConfigShots> configs;
    std::vector<double> scales{1.0};
    Backend backend = Backend::automatic;
    int sequences = 10;
    std::uint64_t seed = 1;
    /// Empty: keep results in memory only.
    std::string output_dir;
    /// Noiseless runs; the scale column then reads 0.
    bool ideal = false;
    bool dump_schedule = false;
    NoiseParams noise = baseline_params();
    SimulatorOptions simulator;

    void validate() const {
        if (configs.empty())
            throw std::invalid_argument("ExperimentSpec: no configurations");
        for (const auto& c : configs)
            if (c.shots == 0)
                throw std::invalid_argument("ExperimentSpec: shots must be positive");
        if (scales.empty())
            throw std::invalid_argument("ExperimentSpec: no noise scales");
        for (double s : scales) {
            if (!(s > 0))
                throw std::invalid_argument("ExperimentSpec: noise scales must be positive");
            scale_params(noise, s);
        }
        if (sequences < 1)
            throw std::invalid_argument("ExperimentSpec: at least one sequence required");
    }
};

/// The nine register shapes of the accuracy sweep with their shot budgets.
inline ExperimentSpec default_sweep_spec() {
    ExperimentSpec spec;
    const int rows[][3] = {{3, 3, 25000},  {3, 6, 25000},  {3, 9, 25000},  {3, 12, 25000}, {4, 8, 50000},
                           {5, 5, 100000}, {4, 12, 50000}, {4, 16, 50000}, {5, 10, 100000}};
    for (const auto& r : rows)
        spec.configs.push_back({QCrankConfig(r[0], r[1]), static_cast<std::uint64_t>(r[2])});
    return spec;
}

struct ResultRow {
    std::string cfg_id;
    int n_address = 0;
    int n_data = 0;
    std::size_t capacity = 0;
    Backend backend = Backend::exact;
    double noise_scale = 0;
    std::uint64_t shots = 0;
    int sequence = 0;
    double c = 0;
    double rmse_raw = 0;
    double rmse_calibrated = 0;
    /// Kept out of results.csv so that file is reproducible byte for byte.
    double wall_seconds = 0;
};

enum class RunRole : std::uint64_t { calibration_data = 0, evaluation_data = 1, calibration_shots = 2, evaluation_shots = 3 };

inline std::uint64_t cell_key(std::uint64_t seed, const QCrankConfig& cfg, int sequence, RunRole role) {
    return derive_key(seed, {static_cast<std::uint64_t>(cfg.address_qubits()), static_cast<std::uint64_t>(cfg.data_qubits()),
                             static_cast<std::uint64_t>(sequence), static_cast<std::uint64_t>(role)});
}

/// Uniform values in [-1, 1).
inline std::vector<double> random_sequence(const QCrankConfig& cfg, std::uint64_t key) {
    CounterRng rng(key);
    std::vector<double> data(cfg.capacity());
    for (auto& x : data)
        x = rng.uniform(-1.0, 1.0);
    return data;
}

inline Schedule compile(const QCrankConfig& cfg, std::span<const double> data) {
    return lower(build_dpqa(cfg, compute_angles(data, cfg)), cfg);
}

namespace detail {
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_site(std::ostream& out, const Site& s) {
    out << s.column << ' ' << s.row << ' ' << (s.slot == Slot::address ? "addr" : "data");
}
} // namespace detail

/// Line-oriented dump of a compiled schedule:
///   SITE <qubit> <column> <row> <addr|data>     initial placement
///   GU <gate> <angle>
///   LU <qubit> <gate> <angle>
///   MOVE <qubit> <column> <row> <slot> -> <column> <row> <slot> [; ...]
///   CZ <a>-<d> ... SPEC <qubit> ...
///   MEAS
inline void write_schedule(std::ostream& out, const Schedule& schedule) {
    const auto& cfg = schedule.config();
    out << "# schedule " << cfg.label() << '\n';
    for (int q = 0; q < cfg.num_qubits(); ++q) {
        out << "SITE " << qubit_name(cfg, q) << ' ';
        detail::write_site(out, schedule.initial_geometry().site_of(q));
        out << '\n';
    }
    for (const auto& inst : schedule.instructions()) {
        if (const auto* g = std::get_if<GlobalU>(&inst)) {
            out << "GU " << to_string(g->kind) << ' ' << detail::fmt_double(g->angle) << '\n';
        } else if (const auto* l = std::get_if<LocalU>(&inst)) {
            out << "LU " << qubit_name(cfg, l->qubit) << ' ' << to_string(l->kind) << ' '
                << detail::fmt_double(l->angle) << '\n';
        } else if (const auto* m = std::get_if<MoveStep>(&inst)) {
            out << "MOVE";
            for (std::size_t k = 0; k < m->moves.size(); ++k) {
                const auto& mv = m->moves[k];
                out << (k ? " ; " : " ") << qubit_name(cfg, mv.atom) << ' ';
                detail::write_site(out, mv.from);
                out << " -> ";
                detail::write_site(out, mv.to);
            }
            out << '\n';
        } else if (const auto* cz = std::get_if<GlobalCz>(&inst)) {
            out << "CZ";
            for (const auto& p : cz->pairs)
                out << ' ' << qubit_name(cfg, p.address) << '-' << qubit_name(cfg, p.data);
            out << " SPEC";
            for (int q : cz->spectators)
                out << ' ' << qubit_name(cfg, q);
            out << '\n';
        } else {
            out << "MEAS\n";
        }
    }
}

inline void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << "cfg_id,n_a,n_d,capacity,backend,noise_scale,shots,sequence,c,rmse_raw,rmse_calibrated\n";
    for (const auto& r : rows)
        out << r.cfg_id << ',' << r.n_address << ',' << r.n_data << ',' << r.capacity << ',' << to_string(r.backend) << ','
            << detail::fmt_double(r.noise_scale) << ',' << r.shots << ',' << r.sequence << ',' << detail::fmt_double(r.c)
            << ',' << detail::fmt_double(r.rmse_raw) << ',' << detail::fmt_double(r.rmse_calibrated) << '\n';
}

inline void write_timing_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << "cfg_id,noise_scale,sequence,backend,wall_seconds\n";
    for (const auto& r : rows)
        out << r.cfg_id << ',' << detail::fmt_double(r.noise_scale) << ',' << r.sequence << ',' << to_string(r.backend)
            << ',' << r.wall_seconds << '\n';
}

inline nlohmann::ordered_json spec_to_json(const ExperimentSpec& spec) {
    nlohmann::ordered_json j;
    j["rng"] = rng_name;
    j["seed"] = spec.seed;
    j["backend"] = to_string(spec.backend);
    j["sequences"] = spec.sequences;
    j["ideal"] = spec.ideal;
    j["scales"] = spec.scales;
    auto& cfgs = j["configs"] = nlohmann::ordered_json::array();
    for (const auto& c : spec.configs)
        cfgs.push_back({{"n_a", c.config.address_qubits()},
                        {"n_d", c.config.data_qubits()},
                        {"capacity", c.config.capacity()},
                        {"shots", c.shots}});
    const auto& p = spec.noise;
    j["noise"] = {
        {"depolarizing", to_string(p.depolarizing)},
        {"lue", p.lue},
        {"gue", p.gue},
        {"mve", {p.mve.px, p.mve.py, p.mve.pz}},
        {"spe", {p.spe.px, p.spe.py, p.spe.pz}},
        {"cz", p.cz.p},
        {"spam", {p.spam.px, p.spam.py, p.spam.pz}},
        {"scale", p.scale},
    };
    return j;
}

/// Called after every finished cell, e.g. for progress output.
using RowCallback = std::function<void(const ResultRow&)>;

/// Runs every cell in (configuration, scale, sequence) order. When
/// output_dir is set, writes results.csv, timing.csv, spec.json and, if
/// requested, one schedule dump per configuration (sequence 0 calibration
/// input).
inline std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, const RowCallback& on_row = {}) {
    spec.validate();
    namespace fs = std::filesystem;
    const bool to_disk = !spec.output_dir.empty();
    if (to_disk)
        fs::create_directories(spec.output_dir);

    std::vector<ResultRow> rows;
    for (const auto& entry : spec.configs) {
        const QCrankConfig& cfg = entry.config;
        const std::uint64_t shots = entry.shots;
        const Backend backend = resolve_backend(spec.backend, cfg.num_qubits(), spec.simulator);
        const std::vector<double> scales = spec.ideal ? std::vector<double>{0.0} : spec.scales;
        for (double scale : scales) {
            const NoiseParams params = spec.ideal ? zero_noise() : scale_params(spec.noise, scale);
            for (int seq = 0; seq < spec.sequences; ++seq) {
                const auto t0 = std::chrono::steady_clock::now();
                auto execute = [&](RunRole data_role, RunRole shot_role) {
                    std::vector<double> truth = random_sequence(cfg, cell_key(spec.seed, cfg, seq, data_role));
                    const Schedule schedule = compile(cfg, truth);
                    if (to_disk && spec.dump_schedule && seq == 0 && scale == scales.front() &&
                        data_role == RunRole::calibration_data) {
                        std::ofstream dump(fs::path(spec.output_dir) / ("schedule_" + std::to_string(cfg.address_qubits()) +
                                                                        "_" + std::to_string(cfg.data_qubits()) + ".txt"));
                        write_schedule(dump, schedule);
                        if (!dump)
                            throw std::runtime_error("run_experiment: cannot write schedule dump");
                    }
                    const NoisyProgram program = attach_noise(schedule, params);
                    ShotCounts counts =
                        run(program, shots, cell_key(spec.seed, cfg, seq, shot_role), backend, spec.simulator);
                    return EncodingRun{cfg, std::move(counts), std::move(truth)};
                };
                const EncodingRun calib = execute(RunRole::calibration_data, RunRole::calibration_shots);
                const EncodingRun eval = execute(RunRole::evaluation_data, RunRole::evaluation_shots);
                const RmseReport report = two_run_protocol(calib, eval);

                ResultRow row;
                row.cfg_id = cfg.label();
                row.n_address = cfg.address_qubits();
                row.n_data = cfg.data_qubits();
                row.capacity = cfg.capacity();
                row.backend = backend;
                row.noise_scale = scale;
                row.shots = shots;
                row.sequence = seq;
                row.c = report.calibration;
                row.rmse_raw = report.rmse_raw;
                row.rmse_calibrated = report.rmse_calibrated;
                row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                if (on_row)
                    on_row(row);
                rows.push_back(std::move(row));
            }
        }
    }

    if (to_disk) {
        const fs::path dir(spec.output_dir);
        std::ofstream results(dir / "results.csv");
        write_results_csv(results, rows);
        std::ofstream timing(dir / "timing.csv");
        write_timing_csv(timing, rows);
        std::ofstream sidecar(dir / "spec.json");
        sidecar << spec_to_json(spec).dump(2) << '\n';
        if (!results || !timing || !sidecar)
            throw std::runtime_error("run_experiment: cannot write output files in " + spec.output_dir);
    }
    return rows;
}

} // namespace qcrank

#endif // QCRANK_HARNESS_HPP
