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

#ifndef QCRANK_KERNELS_HPP
#define QCRANK_KERNELS_HPP

// In-place amplitude kernels shared by the unitary builder, the statevector
// and the density-matrix backends. Bit q of an amplitude index is qubit q.

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace qcrank {

using amplitude = std::complex<double>;

/// Row-major 2x2 matrix.
using Mat2 = std::array<amplitude, 4>;
using RealMat2 = std::array<double, 4>;

namespace kernels {

inline void apply_1q(std::span<amplitude> psi, int q, const Mat2& m) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < psi.size(); base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            const amplitude a0 = psi[k];
            const amplitude a1 = psi[k + stride];
            psi[k] = m[0] * a0 + m[1] * a1;
            psi[k + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

inline void apply_real_1q(std::span<amplitude> psi, int q, const RealMat2& m) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < psi.size(); base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            const amplitude a0 = psi[k];
            const amplitude a1 = psi[k + stride];
            psi[k] = m[0] * a0 + m[1] * a1;
            psi[k + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

inline void apply_x(std::span<amplitude> psi, int q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < psi.size(); base += 2 * stride)
        for (std::size_t k = base; k < base + stride; ++k)
            std::swap(psi[k], psi[k + stride]);
}

// Y|0> = i|1>, Y|1> = -i|0>
inline void apply_y(std::span<amplitude> psi, int q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < psi.size(); base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            const amplitude a0 = psi[k];
            const amplitude a1 = psi[k + stride];
            psi[k] = amplitude{a1.imag(), -a1.real()};
            psi[k + stride] = amplitude{-a0.imag(), a0.real()};
        }
    }
}

inline void apply_z(std::span<amplitude> psi, int q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = stride; base < psi.size(); base += 2 * stride)
        for (std::size_t k = base; k < base + stride; ++k)
            psi[k] = -psi[k];
}

inline void apply_cz(std::span<amplitude> psi, int q0, int q1) {
    const std::size_t mask = (std::size_t{1} << q0) | (std::size_t{1} << q1);
    for (std::size_t k = 0; k < psi.size(); ++k)
        if ((k & mask) == mask)
            psi[k] = -psi[k];
}

inline void apply_cx(std::span<amplitude> psi, int control, int target) {
    const std::size_t c = std::size_t{1} << control;
    const std::size_t t = std::size_t{1} << target;
    for (std::size_t k = 0; k < psi.size(); ++k)
        if ((k & c) && !(k & t))
            std::swap(psi[k], psi[k | t]);
}

} // namespace kernels
} // namespace qcrank

#endif // QCRANK_KERNELS_HPP
