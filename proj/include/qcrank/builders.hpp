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

#ifndef QCRANK_BUILDERS_HPP
#define QCRANK_BUILDERS_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qcrank/angles.hpp"
#include "qcrank/circuit.hpp"
#include "qcrank/config.hpp"

namespace qcrank {

/// Order in which the address row visits the data rows during Gray step t:
/// top to bottom on even steps, bottom to top on odd steps.
inline std::vector<int> row_visit_order(const QCrankConfig& cfg, std::size_t step) {
    const int rows = cfg.data_rows();
    std::vector<int> order(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r)
        order[static_cast<std::size_t>(r)] = step % 2 == 0 ? r : rows - 1 - r;
    return order;
}

namespace detail {
inline void check_angles(const QCrankConfig& cfg, const AngleTable& angles) {
    if (!(angles.config() == cfg))
        throw std::invalid_argument("angle table does not match configuration");
}
} // namespace detail

/// Textbook layout: H on the address register, then per data qubit the
/// sequence Ry(theta_t) CX(control_t -> data). Rows are processed in
/// plain order inside each Gray step so that one row's n_a CXs share a layer.
inline Circuit build_original(const QCrankConfig& cfg, const AngleTable& angles) {
    detail::check_angles(cfg, angles);
    const int na = cfg.address_qubits();
    const auto schedule = control_schedule(cfg);

    Circuit circuit(cfg.num_qubits());
    Layer hadamards;
    for (int b = 0; b < na; ++b)
        hadamards.push_back(Gate::h(cfg.address_qubit(b)));
    circuit.add_layer(std::move(hadamards));

    for (std::size_t t = 0; t < schedule.steps(); ++t) {
        for (int r = 0; r < cfg.data_rows(); ++r) {
            Layer rotations;
            Layer entanglers;
            for (int p = 0; p < na; ++p) {
                const int j = r * na + p;
                rotations.push_back(Gate::ry(cfg.data_qubit(j), angles.theta(t, j)));
                entanglers.push_back(Gate::cx(cfg.address_qubit(schedule.controls[t][static_cast<std::size_t>(p)]),
                                              cfg.data_qubit(j)));
            }
            circuit.add_layer(std::move(rotations));
            circuit.add_layer(std::move(entanglers));
        }
    }
    circuit.add_layer({Gate::measure_all()});
    return circuit;
}

/// Neutral-atom layout. Uses CX = (I x H) CZ (I x H) and H Ry(t) H = Ry(-t)
/// to fold every data-qubit Hadamard except the last into one global
/// Hadamard layer at the start:
///
///   global H | per step t: Ry(-theta_t) on all data, then one CZ layer of
///   n_a parallel gates per data row (boustrophedon order) | H on data | measure
///
/// Barriers separate the Gray steps. The result is unitarily equal to
/// build_original, not just equal in distribution.
inline Circuit build_dpqa(const QCrankConfig& cfg, const AngleTable& angles) {
    detail::check_angles(cfg, angles);
    const int na = cfg.address_qubits();
    const int nd = cfg.data_qubits();
    const auto schedule = control_schedule(cfg);

    Circuit circuit(cfg.num_qubits());
    Layer hadamards;
    for (int q = 0; q < cfg.num_qubits(); ++q)
        hadamards.push_back(Gate::h(q));
    circuit.add_layer(std::move(hadamards));
    circuit.add_layer({Gate::barrier()});

    for (std::size_t t = 0; t < schedule.steps(); ++t) {
        Layer rotations;
        for (int j = 0; j < nd; ++j)
            rotations.push_back(Gate::ry(cfg.data_qubit(j), -angles.theta(t, j)));
        circuit.add_layer(std::move(rotations));
        for (int r : row_visit_order(cfg, t)) {
            Layer pulse;
            for (int p = 0; p < na; ++p)
                pulse.push_back(Gate::cz(cfg.address_qubit(schedule.controls[t][static_cast<std::size_t>(p)]),
                                         cfg.data_qubit(r * na + p)));
            circuit.add_layer(std::move(pulse));
        }
        circuit.add_layer({Gate::barrier()});
    }

    Layer closing;
    for (int j = 0; j < nd; ++j)
        closing.push_back(Gate::h(cfg.data_qubit(j)));
    circuit.add_layer(std::move(closing));
    circuit.add_layer({Gate::measure_all()});
    return circuit;
}

} // namespace qcrank

#endif // QCRANK_BUILDERS_HPP
