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

#ifndef QCRANK_ANGLES_HPP
#define QCRANK_ANGLES_HPP

// Rotation angles of the uniformly controlled Ry blocks.
//
// Every data qubit j carries a uniformly controlled Ry whose angle for
// address i is phi_ij = 2 alpha_ij, alpha_ij = acos(x_ij) / 2, so that
// <Z_j | address i> = cos(2 alpha_ij) = x_ij. The block is decomposed into
// 2^n_a rotations Ry(theta_tj) each followed by an entangler controlled by
// the address bit that flips between Gray codewords g_t and g_{t+1}.
// A data qubit in row position p uses address wires relabelled b -> b+p
// (mod n_a), which makes the n_a entanglers of one row hit distinct
// address qubits at every step. The sign that rotation t picks up for
// address i is (-1)^{popcount(rot_p(g_t) & i)}, hence
//
//   theta_tj = 2^{-n_a} * sum_i (-1)^{popcount(rot_p(g_t) & i)} phi_ij.

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcrank/config.hpp"

namespace qcrank {

inline std::uint32_t gray_code(std::uint32_t t) { return t ^ (t >> 1); }

/// Address bit flipped when stepping from Gray codeword t to t+1 (cyclic).
inline std::vector<int> gray_control_sequence(int n_address) {
    const std::uint32_t n = std::uint32_t{1} << n_address;
    std::vector<int> seq(n);
    for (std::uint32_t t = 0; t + 1 < n; ++t)
        seq[t] = std::countr_zero(t + 1);
    seq[n - 1] = n_address - 1;
    return seq;
}

/// Cyclic relabelling of address wires: bit b moves to bit (b + shift) mod n.
inline std::uint32_t rotate_bits(std::uint32_t mask, int shift, int n_bits) {
    std::uint32_t out = 0;
    for (int b = 0; b < n_bits; ++b)
        if (mask >> b & 1u)
            out |= 1u << ((b + shift) % n_bits);
    return out;
}

/// Entangler controls per Gray step and row position.
/// controls[t][p] is the address qubit paired with the data qubit at row
/// position p during step t. Every row uses the same table.
struct ControlSchedule {
    int n_address = 0;
    std::vector<std::vector<int>> controls;

    std::size_t steps() const noexcept { return controls.size(); }
};

inline ControlSchedule control_schedule(const QCrankConfig& cfg) {
    const int na = cfg.address_qubits();
    const auto base = gray_control_sequence(na);
    ControlSchedule schedule{na, {}};
    schedule.controls.reserve(base.size());
    for (int c : base) {
        std::vector<int> row(static_cast<std::size_t>(na));
        for (int p = 0; p < na; ++p)
            row[static_cast<std::size_t>(p)] = (c + p) % na;
        schedule.controls.push_back(std::move(row));
    }
    return schedule;
}

/// Unnormalised in-place fast Walsh-Hadamard transform,
/// out[k] = sum_i (-1)^{popcount(k & i)} in[i]. Size must be a power of two.
inline void fwht(std::span<double> v) {
    if (!std::has_single_bit(v.size()))
        throw std::invalid_argument("fwht: size must be a power of two");
    for (std::size_t h = 1; h < v.size(); h <<= 1) {
        for (std::size_t base = 0; base < v.size(); base += 2 * h) {
            for (std::size_t k = base; k < base + h; ++k) {
                const double a = v[k];
                const double b = v[k + h];
                v[k] = a + b;
                v[k + h] = a - b;
            }
        }
    }
}

/// Target half-angles and circuit rotation angles of one encoding.
class AngleTable {
public:
    AngleTable(QCrankConfig cfg, std::vector<double> alpha, std::vector<double> theta)
        : cfg_(cfg), alpha_(std::move(alpha)), theta_(std::move(theta)) {
        if (alpha_.size() != cfg_.capacity() || theta_.size() != cfg_.capacity())
            throw std::invalid_argument("AngleTable: size does not match configuration");
    }

    const QCrankConfig& config() const noexcept { return cfg_; }

    /// alpha for address i and data qubit j.
    double alpha(std::size_t i, int j) const { return alpha_[i * n_data() + static_cast<std::size_t>(j)]; }
    /// theta for Gray step t and data qubit j.
    double theta(std::size_t t, int j) const { return theta_[t * n_data() + static_cast<std::size_t>(j)]; }

    std::span<const double> alpha_values() const noexcept { return alpha_; }
    std::span<const double> theta_values() const noexcept { return theta_; }

private:
    std::size_t n_data() const noexcept { return static_cast<std::size_t>(cfg_.data_qubits()); }

    QCrankConfig cfg_;
    std::vector<double> alpha_;
    std::vector<double> theta_;
};

/// Maps data[k] to (address i = k / n_d, data qubit j = k % n_d) and
/// computes alpha and theta.
inline AngleTable compute_angles(std::span<const double> data, const QCrankConfig& cfg) {
    if (data.size() != cfg.capacity())
        throw std::invalid_argument("compute_angles: expected " + std::to_string(cfg.capacity()) +
                                    " values, got " + std::to_string(data.size()));
    for (double x : data)
        if (!(x >= -1.0 && x <= 1.0))
            throw std::invalid_argument("compute_angles: value outside [-1, 1]");

    const int na = cfg.address_qubits();
    const std::size_t nd = static_cast<std::size_t>(cfg.data_qubits());
    const std::size_t n_addr = cfg.num_addresses();

    std::vector<double> alpha(data.size());
    for (std::size_t k = 0; k < data.size(); ++k)
        alpha[k] = std::acos(data[k]) / 2;

    std::vector<double> theta(data.size());
    std::vector<double> spectrum(n_addr);
    for (std::size_t j = 0; j < nd; ++j) {
        const int p = static_cast<int>(j) % na;
        for (std::size_t i = 0; i < n_addr; ++i)
            spectrum[i] = 2 * alpha[i * nd + j];
        fwht(spectrum);
        for (std::size_t t = 0; t < n_addr; ++t) {
            const auto mask = rotate_bits(gray_code(static_cast<std::uint32_t>(t)), p, na);
            theta[t * nd + j] = spectrum[mask] / static_cast<double>(n_addr);
        }
    }
    return AngleTable(cfg, std::move(alpha), std::move(theta));
}

/// Inverse transform: recovers alpha from theta alone.
inline std::vector<double> alpha_from_theta(std::span<const double> theta, const QCrankConfig& cfg) {
    if (theta.size() != cfg.capacity())
        throw std::invalid_argument("alpha_from_theta: size does not match configuration");
    const int na = cfg.address_qubits();
    const std::size_t nd = static_cast<std::size_t>(cfg.data_qubits());
    const std::size_t n_addr = cfg.num_addresses();

    std::vector<double> alpha(theta.size());
    std::vector<double> spectrum(n_addr);
    for (std::size_t j = 0; j < nd; ++j) {
        const int p = static_cast<int>(j) % na;
        for (std::size_t t = 0; t < n_addr; ++t)
            spectrum[rotate_bits(gray_code(static_cast<std::uint32_t>(t)), p, na)] = theta[t * nd + j];
        fwht(spectrum);
        for (std::size_t i = 0; i < n_addr; ++i)
            alpha[i * nd + j] = spectrum[i] / 2;
    }
    return alpha;
}

} // namespace qcrank

#endif // QCRANK_ANGLES_HPP
