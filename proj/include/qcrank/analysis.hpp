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

#ifndef QCRANK_ANALYSIS_HPP
#define QCRANK_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qcrank/config.hpp"
#include "qcrank/simulator.hpp"

namespace qcrank {

/// Reconstructed sequence, same index layout as the input data
/// (k = i * n_d + j).
struct DecodedSequence {
    std::vector<double> values;
    /// Shots that landed on the entry's address.
    std::vector<std::uint64_t> shots;
    std::vector<bool> missing;

    std::size_t size() const noexcept { return values.size(); }
    std::size_t missing_count() const {
        std::size_t n = 0;
        for (bool m : missing)
            n += m;
        return n;
    }
};

/// x[i, j] = (n0 - n1) / (n0 + n1) over the shots whose address bits read i.
/// Entries of addresses that never occurred are flagged missing and set to 0.
inline DecodedSequence decode(const ShotCounts& counts, const QCrankConfig& cfg) {
    if (counts.n_qubits != cfg.num_qubits())
        throw std::invalid_argument("decode: counts do not match configuration");
    const std::size_t n_addr = cfg.num_addresses();
    const std::size_t nd = static_cast<std::size_t>(cfg.data_qubits());
    std::vector<std::uint64_t> per_address(n_addr, 0);
    std::vector<std::int64_t> balance(cfg.capacity(), 0);
    for (const auto& [outcome, n] : counts.counts) {
        const std::size_t i = outcome & (n_addr - 1);
        per_address[i] += n;
        for (std::size_t j = 0; j < nd; ++j) {
            const bool one = outcome >> (static_cast<std::size_t>(cfg.address_qubits()) + j) & 1u;
            balance[i * nd + j] += one ? -static_cast<std::int64_t>(n) : static_cast<std::int64_t>(n);
        }
    }
    DecodedSequence out;
    out.values.resize(cfg.capacity());
    out.shots.resize(cfg.capacity());
    out.missing.resize(cfg.capacity());
    for (std::size_t i = 0; i < n_addr; ++i) {
        for (std::size_t j = 0; j < nd; ++j) {
            const std::size_t k = i * nd + j;
            out.shots[k] = per_address[i];
            out.missing[k] = per_address[i] == 0;
            out.values[k] = per_address[i] ? static_cast<double>(balance[k]) / static_cast<double>(per_address[i]) : 0.0;
        }
    }
    return out;
}

struct Calibration {
    double c = 1.0;
};

/// Least-squares scale c minimising sum (c x - truth)^2 over present entries.
inline Calibration fit_calibration(const DecodedSequence& decoded, std::span<const double> truth) {
    if (decoded.size() != truth.size())
        throw std::invalid_argument("fit_calibration: length mismatch");
    double xy = 0;
    double xx = 0;
    for (std::size_t k = 0; k < truth.size(); ++k) {
        if (decoded.missing[k])
            continue;
        xy += decoded.values[k] * truth[k];
        xx += decoded.values[k] * decoded.values[k];
    }
    if (!(xx > 0))
        throw std::invalid_argument("fit_calibration: reconstructed values are all zero");
    return {xy / xx};
}

struct Histogram {
    double low = -0.5;
    double high = 0.5;
    double width = 0.01;
    /// Out-of-range values are clamped into the first or last bin.
    std::vector<std::uint64_t> counts;

    std::vector<double> edges() const {
        std::vector<double> e(counts.size() + 1);
        for (std::size_t k = 0; k < e.size(); ++k)
            e[k] = low + width * static_cast<double>(k);
        return e;
    }
};

struct RmseReport {
    /// Standard deviation of (x - truth).
    double rmse_raw = 0;
    /// Standard deviation of (c x - truth).
    double rmse_calibrated = 0;
    /// Mean of (c x - truth), reported next to the standard deviation.
    double mean_residual = 0;
    /// Root mean square of (c x - truth) about zero.
    double rms_calibrated = 0;
    double calibration = 1;
    double dynamic_range = 1;
    std::size_t entries = 0;
    std::size_t missing = 0;
    Histogram residuals;
};

namespace detail {
inline Histogram residual_histogram(std::span<const double> residuals) {
    Histogram h;
    const std::size_t bins = static_cast<std::size_t>(std::lround((h.high - h.low) / h.width));
    h.counts.assign(bins, 0);
    for (double r : residuals) {
        const double pos = std::floor((r - h.low) / h.width);
        const double clamped = std::min(std::max(pos, 0.0), static_cast<double>(bins - 1));
        ++h.counts[static_cast<std::size_t>(clamped)];
    }
    return h;
}

inline double population_std(std::span<const double> v, double mean) {
    double s = 0;
    for (double x : v)
        s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size()));
}

inline double mean_of(std::span<const double> v) {
    double s = 0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}
} // namespace detail

/// Residual statistics over present entries. Standard deviations divide
/// by the entry count.
inline RmseReport rmse(const DecodedSequence& decoded, std::span<const double> truth, const Calibration& calibration) {
    if (decoded.size() != truth.size())
        throw std::invalid_argument("rmse: length mismatch");
    std::vector<double> raw;
    std::vector<double> corrected;
    for (std::size_t k = 0; k < truth.size(); ++k) {
        if (decoded.missing[k])
            continue;
        raw.push_back(decoded.values[k] - truth[k]);
        corrected.push_back(calibration.c * decoded.values[k] - truth[k]);
    }
    RmseReport report;
    report.calibration = calibration.c;
    report.dynamic_range = 1.0 / calibration.c;
    report.entries = corrected.size();
    report.missing = truth.size() - corrected.size();
    report.residuals = detail::residual_histogram(corrected);
    if (corrected.empty())
        return report;
    report.rmse_raw = detail::population_std(raw, detail::mean_of(raw));
    report.mean_residual = detail::mean_of(corrected);
    report.rmse_calibrated = detail::population_std(corrected, report.mean_residual);
    double ss = 0;
    for (double r : corrected)
        ss += r * r;
    report.rms_calibrated = std::sqrt(ss / static_cast<double>(corrected.size()));
    return report;
}

/// One executed encoding: its configuration, measured counts and input.
struct EncodingRun {
    QCrankConfig config;
    ShotCounts counts;
    std::vector<double> truth;
};

/// Fits c on the calibration run only and applies it blindly to the
/// evaluation run; the report describes the evaluation run.
inline RmseReport two_run_protocol(const EncodingRun& calibration, const EncodingRun& evaluation) {
    if (!(calibration.config == evaluation.config))
        throw std::invalid_argument("two_run_protocol: configuration mismatch");
    const auto calib_decoded = decode(calibration.counts, calibration.config);
    const Calibration c = fit_calibration(calib_decoded, calibration.truth);
    return rmse(decode(evaluation.counts, evaluation.config), evaluation.truth, c);
}

} // namespace qcrank

#endif // QCRANK_ANALYSIS_HPP
