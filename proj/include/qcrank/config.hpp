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

#ifndef QCRANK_CONFIG_HPP
#define QCRANK_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcrank {

/// Register sizes of a QCrank encoder.
///
/// Qubit numbering used throughout the library: address qubits occupy
/// indices [0, n_address), data qubits occupy [n_address, n_address + n_data).
/// Address bit b of an address index i is carried by address qubit b.
class QCrankConfig {
public:
    static constexpr int max_address_qubits = 20;

    QCrankConfig(int n_address, int n_data) : n_address_(n_address), n_data_(n_data) {
        if (n_address < 1 || n_data < 1)
            throw std::invalid_argument("QCrankConfig: n_address and n_data must be >= 1");
        if (n_address > max_address_qubits)
            throw std::invalid_argument("QCrankConfig: n_address too large");
        if (n_data % n_address != 0)
            throw std::invalid_argument("QCrankConfig: n_data must be divisible by n_address");
    }

    int address_qubits() const noexcept { return n_address_; }
    int data_qubits() const noexcept { return n_data_; }
    int num_qubits() const noexcept { return n_address_ + n_data_; }

    /// Number of distinct address values, 2^n_address.
    std::size_t num_addresses() const noexcept { return std::size_t{1} << n_address_; }

    /// Number of stored reals, n_data * 2^n_address. Equals the CZ count.
    std::size_t capacity() const noexcept { return num_addresses() * static_cast<std::size_t>(n_data_); }

    /// Data qubits are arranged in rows of n_address.
    int data_rows() const noexcept { return n_data_ / n_address_; }

    /// Number of sequential CZ layers when n_address CZs run in parallel.
    std::size_t cz_depth() const noexcept { return num_addresses() * static_cast<std::size_t>(data_rows()); }

    int address_qubit(int bit) const noexcept { return bit; }
    int data_qubit(int j) const noexcept { return n_address_ + j; }
    bool is_address(int qubit) const noexcept { return qubit >= 0 && qubit < n_address_; }
    bool is_data(int qubit) const noexcept { return qubit >= n_address_ && qubit < num_qubits(); }

    /// "3+6" style label.
    std::string label() const { return std::to_string(n_address_) + "+" + std::to_string(n_data_); }

    friend bool operator==(const QCrankConfig&, const QCrankConfig&) = default;

private:
    int n_address_;
    int n_data_;
};

} // namespace qcrank

#endif // QCRANK_CONFIG_HPP
