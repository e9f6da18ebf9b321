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

#ifndef QCRANK_DENSITY_MATRIX_HPP
#define QCRANK_DENSITY_MATRIX_HPP

// Dense density matrix stored row-major as a vector over 2n bits: entry
// (r, c) lives at index (r << n) | c. A unitary U on qubit q is U on bit
// q + n and conj(U) on bit q of that vector.
//
// Pauli channels use the identity
//   (sum_P p_P P rho P^dag)(r, c) = sum_x K[x][r ^ c] rho(r ^ x, c ^ x),
//   K[x][w] = sum_z p(x, z) (-1)^{popcount(z & w)},
// where P = X^x Z^z up to phase. Coefficients are real, so every output
// entry is a short real combination of entries with matching sign under
// any diagonal +-1 conjugation.

#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "qcrank/circuit.hpp"
#include "qcrank/kernels.hpp"
#include "qcrank/noise.hpp"
#include "qcrank/statevector.hpp"

namespace qcrank {

class DensityMatrix {
public:
    static constexpr int max_qubits = 14;

    /// |0...0><0...0| on n qubits.
    explicit DensityMatrix(int n_qubits) : n_(n_qubits) {
        if (n_qubits < 1 || n_qubits > max_qubits)
            throw std::invalid_argument("DensityMatrix: register size out of range");
        data_.assign(std::size_t{1} << (2 * n_qubits), amplitude{0, 0});
        data_[0] = 1.0;
    }

    static DensityMatrix from_state(const StateVector& psi) {
        DensityMatrix rho(psi.n_qubits());
        const std::size_t d = rho.dim();
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                rho(r, c) = psi[r] * std::conj(psi[c]);
        return rho;
    }

    int n_qubits() const noexcept { return n_; }
    std::size_t dim() const noexcept { return std::size_t{1} << n_; }
    amplitude& operator()(std::size_t r, std::size_t c) { return data_[(r << n_) | c]; }
    const amplitude& operator()(std::size_t r, std::size_t c) const { return data_[(r << n_) | c]; }

    void apply(GateKind kind, double angle, int q) {
        if (kind == GateKind::y) {
            kernels::apply_y(data_, q + n_);
            kernels::apply_1q(data_, q, conj(gate_matrix(GateKind::y, 0)));
            return;
        }
        apply_single(data_, kind, angle, q + n_);
        apply_single(data_, kind, angle, q);
    }

    void apply_cz(int a, int b) {
        kernels::apply_cz(data_, a + n_, b + n_);
        kernels::apply_cz(data_, a, b);
    }

    void apply_channel(const PauliChannel1Q& ch, int q) {
        const auto p = ch.probabilities();
        apply_pauli_channel<1>(p, {q});
    }

    /// First qubit carries the first Pauli label of the channel table.
    void apply_channel(const PauliChannel2Q& ch, int first, int second) {
        if (first == second)
            throw std::invalid_argument("apply_channel: identical qubits");
        const auto p = ch.probabilities();
        apply_pauli_channel<2>(p, {first, second});
    }

    amplitude trace() const {
        amplitude t{0, 0};
        for (std::size_t k = 0; k < dim(); ++k)
            t += (*this)(k, k);
        return t;
    }

    /// Largest |rho(r, c) - conj(rho(c, r))|.
    double hermiticity_error() const {
        double worst = 0;
        for (std::size_t r = 0; r < dim(); ++r)
            for (std::size_t c = r; c < dim(); ++c)
                worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return worst;
    }

    std::vector<double> diagonal() const {
        std::vector<double> p(dim());
        for (std::size_t k = 0; k < dim(); ++k)
            p[k] = (*this)(k, k).real();
        return p;
    }

private:
    static Mat2 conj(Mat2 m) {
        for (auto& v : m)
            v = std::conj(v);
        return m;
    }

    // probs is indexed by Pauli labels, first qubit most significant.
    template <int K>
    void apply_pauli_channel(std::span<const double> probs, std::array<int, K> qubits) {
        constexpr std::size_t block = std::size_t{1} << K;
        for (int q : qubits)
            if (q < 0 || q >= n_)
                throw std::invalid_argument("apply_channel: qubit out of range");

        // coeff[x][w]; x and w are K-bit masks, bit i belongs to qubits[i].
        std::array<std::array<double, block>, block> coeff{};
        for (std::size_t label = 0; label < probs.size(); ++label) {
            std::size_t x = 0;
            std::size_t z = 0;
            for (int i = 0; i < K; ++i) {
                const int pauli = static_cast<int>(label >> (2 * (K - 1 - i)) & 3u);
                x |= static_cast<std::size_t>(pauli_x_bit(pauli)) << i;
                z |= static_cast<std::size_t>(pauli_z_bit(pauli)) << i;
            }
            for (std::size_t w = 0; w < block; ++w)
                coeff[x][w] += (std::popcount(z & w) % 2 ? -1.0 : 1.0) * probs[label];
        }

        std::array<std::size_t, block> row_off{};
        std::array<std::size_t, block> col_off{};
        std::size_t mask = 0;
        for (std::size_t m = 0; m < block; ++m) {
            for (int i = 0; i < K; ++i) {
                if (m >> i & 1u) {
                    row_off[m] |= std::size_t{1} << (qubits[static_cast<std::size_t>(i)] + n_);
                    col_off[m] |= std::size_t{1} << qubits[static_cast<std::size_t>(i)];
                }
            }
            mask |= row_off[m] | col_off[m];
        }

        std::array<amplitude, block * block> in{};
        for (std::size_t base = 0; base < data_.size(); ++base) {
            if (base & mask)
                continue;
            for (std::size_t r = 0; r < block; ++r)
                for (std::size_t c = 0; c < block; ++c)
                    in[r * block + c] = data_[base | row_off[r] | col_off[c]];
            for (std::size_t r = 0; r < block; ++r) {
                for (std::size_t c = 0; c < block; ++c) {
                    amplitude acc{0, 0};
                    for (std::size_t x = 0; x < block; ++x) {
                        const double k = coeff[x][r ^ c];
                        if (k != 0)
                            acc += k * in[(r ^ x) * block + (c ^ x)];
                    }
                    data_[base | row_off[r] | col_off[c]] = acc;
                }
            }
        }
    }

    int n_;
    std::vector<amplitude> data_;
};

} // namespace qcrank

#endif // QCRANK_DENSITY_MATRIX_HPP
