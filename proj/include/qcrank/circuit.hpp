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

#ifndef QCRANK_CIRCUIT_HPP
#define QCRANK_CIRCUIT_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcrank/kernels.hpp"

namespace qcrank {

enum class GateKind { ry, h, x, y, z, cx, cz, barrier, measure_all };

enum class Scope { local, global };

inline const char* to_string(GateKind kind) {
    switch (kind) {
    case GateKind::ry: return "ry";
    case GateKind::h: return "h";
    case GateKind::x: return "x";
    case GateKind::y: return "y";
    case GateKind::z: return "z";
    case GateKind::cx: return "cx";
    case GateKind::cz: return "cz";
    case GateKind::barrier: return "barrier";
    case GateKind::measure_all: return "measure";
    }
    return "?";
}

inline bool is_single_qubit(GateKind kind) {
    return kind == GateKind::ry || kind == GateKind::h || kind == GateKind::x || kind == GateKind::y ||
           kind == GateKind::z;
}

inline bool is_two_qubit(GateKind kind) { return kind == GateKind::cx || kind == GateKind::cz; }

/// A gate instance. For cx the first qubit is the control. Barrier and
/// measure_all span the whole register and must sit alone in their layer.
struct Gate {
    GateKind kind;
    std::vector<int> qubits;
    double angle = 0.0;
    Scope scope = Scope::local;

    static Gate ry(int q, double angle) { return {GateKind::ry, {q}, angle}; }
    static Gate h(int q) { return {GateKind::h, {q}}; }
    static Gate x(int q) { return {GateKind::x, {q}}; }
    static Gate y(int q) { return {GateKind::y, {q}}; }
    static Gate z(int q) { return {GateKind::z, {q}}; }
    static Gate cx(int control, int target) { return {GateKind::cx, {control, target}}; }
    static Gate cz(int a, int b) { return {GateKind::cz, {a, b}}; }
    static Gate barrier() { return {GateKind::barrier, {}}; }
    static Gate measure_all() { return {GateKind::measure_all, {}}; }
};

using Layer = std::vector<Gate>;

/// Matrix of a single-qubit gate kind. Ry(t) = exp(-i t Y / 2).
inline RealMat2 real_gate_matrix(GateKind kind, double angle) {
    switch (kind) {
    case GateKind::ry: {
        const double c = std::cos(angle / 2);
        const double s = std::sin(angle / 2);
        return {c, -s, s, c};
    }
    case GateKind::h: {
        constexpr double r = std::numbers::sqrt2 / 2;
        return {r, r, r, -r};
    }
    case GateKind::x: return {0, 1, 1, 0};
    case GateKind::z: return {1, 0, 0, -1};
    default: throw std::invalid_argument("real_gate_matrix: not a real single-qubit gate");
    }
}

inline Mat2 gate_matrix(GateKind kind, double angle) {
    if (kind == GateKind::y)
        return {amplitude{0, 0}, amplitude{0, -1}, amplitude{0, 1}, amplitude{0, 0}};
    const RealMat2 m = real_gate_matrix(kind, angle);
    return {m[0], m[1], m[2], m[3]};
}

/// Applies one single-qubit gate kind to qubit q of an amplitude vector.
inline void apply_single(std::span<amplitude> psi, GateKind kind, double angle, int q) {
    switch (kind) {
    case GateKind::x: kernels::apply_x(psi, q); break;
    case GateKind::y: kernels::apply_y(psi, q); break;
    case GateKind::z: kernels::apply_z(psi, q); break;
    default: kernels::apply_real_1q(psi, q, real_gate_matrix(kind, angle)); break;
    }
}

/// Applies a gate to an amplitude vector; barrier and measurement are no-ops.
inline void apply_gate(std::span<amplitude> psi, const Gate& g) {
    switch (g.kind) {
    case GateKind::cx: kernels::apply_cx(psi, g.qubits[0], g.qubits[1]); break;
    case GateKind::cz: kernels::apply_cz(psi, g.qubits[0], g.qubits[1]); break;
    case GateKind::barrier:
    case GateKind::measure_all: break;
    default: apply_single(psi, g.kind, g.angle, g.qubits[0]); break;
    }
}

/// Layered gate-level circuit. Gates within a layer act on disjoint qubits.
class Circuit {
public:
    explicit Circuit(int n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits < 1 || n_qubits > 30)
            throw std::invalid_argument("Circuit: register size out of range");
    }

    int n_qubits() const noexcept { return n_qubits_; }
    const std::vector<Layer>& layers() const noexcept { return layers_; }

    void add_layer(Layer layer) { insert_layer(layers_.size(), std::move(layer)); }

    /// Validates the layer, tags single-qubit gates global or local and
    /// inserts it before position `pos`.
    void insert_layer(std::size_t pos, Layer layer) {
        if (pos > layers_.size())
            throw std::out_of_range("Circuit::insert_layer: position past end");
        validate(layer);
        tag_scope(layer);
        layers_.insert(layers_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(layer));
    }

    std::size_t count(GateKind kind) const {
        std::size_t n = 0;
        for (const auto& layer : layers_)
            for (const auto& g : layer)
                n += g.kind == kind;
        return n;
    }

    std::size_t two_qubit_gate_count() const { return count(GateKind::cx) + count(GateKind::cz); }

    /// Number of layers holding at least one two-qubit gate.
    std::size_t two_qubit_depth() const {
        std::size_t n = 0;
        for (const auto& layer : layers_) {
            for (const auto& g : layer) {
                if (is_two_qubit(g.kind)) {
                    ++n;
                    break;
                }
            }
        }
        return n;
    }

private:
    void validate(Layer& layer) const {
        if (layer.empty())
            throw std::invalid_argument("Circuit: empty layer");
        std::vector<bool> used(static_cast<std::size_t>(n_qubits_), false);
        for (auto& g : layer) {
            if (g.kind == GateKind::barrier || g.kind == GateKind::measure_all) {
                if (layer.size() != 1)
                    throw std::invalid_argument("Circuit: barrier/measure must be alone in a layer");
                g.qubits.clear();
                for (int q = 0; q < n_qubits_; ++q)
                    g.qubits.push_back(q);
                return;
            }
            const std::size_t arity = is_two_qubit(g.kind) ? 2 : 1;
            if (g.qubits.size() != arity)
                throw std::invalid_argument(std::string("Circuit: wrong qubit count for ") + to_string(g.kind));
            if (arity == 2 && g.qubits[0] == g.qubits[1])
                throw std::invalid_argument("Circuit: two-qubit gate on identical qubits");
            for (int q : g.qubits) {
                if (q < 0 || q >= n_qubits_)
                    throw std::invalid_argument("Circuit: qubit index out of range");
                if (used[static_cast<std::size_t>(q)])
                    throw std::invalid_argument("Circuit: overlapping gates within a layer");
                used[static_cast<std::size_t>(q)] = true;
            }
        }
    }

    void tag_scope(Layer& layer) const {
        bool global = static_cast<int>(layer.size()) == n_qubits_;
        for (const auto& g : layer)
            global = global && is_single_qubit(g.kind) && g.kind == layer.front().kind &&
                     g.angle == layer.front().angle;
        for (auto& g : layer)
            g.scope = global ? Scope::global : Scope::local;
    }

    int n_qubits_;
    std::vector<Layer> layers_;
};

/// Dense square complex matrix, column-major.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i)
            m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }
    amplitude& operator()(std::size_t r, std::size_t c) { return data_[c * dim_ + r]; }
    const amplitude& operator()(std::size_t r, std::size_t c) const { return data_[c * dim_ + r]; }
    std::span<amplitude> column(std::size_t c) { return {data_.data() + c * dim_, dim_}; }
    std::span<const amplitude> column(std::size_t c) const { return {data_.data() + c * dim_, dim_}; }

private:
    std::size_t dim_;
    std::vector<amplitude> data_;
};

inline constexpr int max_unitary_qubits = 10;

/// Full unitary of a circuit; barriers and measurements are skipped.
inline ComplexMatrix unitary_of(const Circuit& circuit) {
    if (circuit.n_qubits() > max_unitary_qubits)
        throw std::invalid_argument("unitary_of: register too large");
    ComplexMatrix u = ComplexMatrix::identity(std::size_t{1} << circuit.n_qubits());
    for (std::size_t c = 0; c < u.dim(); ++c)
        for (const auto& layer : circuit.layers())
            for (const auto& g : layer)
                apply_gate(u.column(c), g);
    return u;
}

} // namespace qcrank

#endif // QCRANK_CIRCUIT_HPP
