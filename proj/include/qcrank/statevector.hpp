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

#ifndef QCRANK_STATEVECTOR_HPP
#define QCRANK_STATEVECTOR_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "qcrank/circuit.hpp"
#include "qcrank/kernels.hpp"
#include "qcrank/noise.hpp"

namespace qcrank {

class StateVector {
public:
    static constexpr int max_qubits = 30;

    /// |0...0> on n qubits.
    explicit StateVector(int n_qubits) : n_(n_qubits) {
        if (n_qubits < 1 || n_qubits > max_qubits)
            throw std::invalid_argument("StateVector: register size out of range");
        amps_.assign(std::size_t{1} << n_qubits, amplitude{0, 0});
        amps_[0] = 1.0;
    }

    int n_qubits() const noexcept { return n_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<amplitude> amplitudes() noexcept { return amps_; }
    std::span<const amplitude> amplitudes() const noexcept { return amps_; }
    const amplitude& operator[](std::size_t k) const { return amps_[k]; }

    void apply(GateKind kind, double angle, int q) { apply_single(amps_, kind, angle, q); }
    void apply(const Gate& g) { apply_gate(amps_, g); }
    void apply_cz(int a, int b) { kernels::apply_cz(amps_, a, b); }

    void apply_pauli(Pauli p, int q) {
        switch (p) {
        case Pauli::i: break;
        case Pauli::x: kernels::apply_x(amps_, q); break;
        case Pauli::y: kernels::apply_y(amps_, q); break;
        case Pauli::z: kernels::apply_z(amps_, q); break;
        }
    }

    double norm_squared() const {
        double s = 0;
        for (const auto& a : amps_)
            s += std::norm(a);
        return s;
    }

    std::vector<double> probabilities() const {
        std::vector<double> p(amps_.size());
        for (std::size_t k = 0; k < amps_.size(); ++k)
            p[k] = std::norm(amps_[k]);
        return p;
    }

private:
    int n_;
    std::vector<amplitude> amps_;
};

/// Noiseless gate-level simulation from |0...0>.
inline StateVector simulate(const Circuit& circuit) {
    StateVector psi(circuit.n_qubits());
    for (const auto& layer : circuit.layers())
        for (const auto& g : layer)
            psi.apply(g);
    return psi;
}

} // namespace qcrank

#endif // QCRANK_STATEVECTOR_HPP
