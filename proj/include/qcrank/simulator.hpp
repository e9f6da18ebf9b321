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

#ifndef QCRANK_SIMULATOR_HPP
#define QCRANK_SIMULATOR_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "qcrank/density_matrix.hpp"
#include "qcrank/dpqa.hpp"
#include "qcrank/noise.hpp"
#include "qcrank/rng.hpp"
#include "qcrank/statevector.hpp"

namespace qcrank {

/// Histogram of measurement outcomes. Outcome bit q is the result of qubit
/// q, so the low n_a bits are the address index. bitstring() prints qubit
/// 0 first: address bits a0.., then data bits d0...
struct ShotCounts {
    int n_qubits = 0;
    std::uint64_t shots = 0;
    std::map<std::uint64_t, std::uint64_t> counts;

    std::uint64_t count(std::uint64_t outcome) const {
        auto it = counts.find(outcome);
        return it == counts.end() ? 0 : it->second;
    }

    std::string bitstring(std::uint64_t outcome) const {
        std::string s(static_cast<std::size_t>(n_qubits), '0');
        for (int q = 0; q < n_qubits; ++q)
            if (outcome >> q & 1u)
                s[static_cast<std::size_t>(q)] = '1';
        return s;
    }

    friend bool operator==(const ShotCounts&, const ShotCounts&) = default;
};

enum class Backend { exact, trajectories, automatic };

inline const char* to_string(Backend b) {
    switch (b) {
    case Backend::exact: return "exact";
    case Backend::trajectories: return "traj";
    case Backend::automatic: return "auto";
    }
    return "?";
}

struct SimulatorOptions {
    int max_exact_qubits = 13;
    int max_trajectory_qubits = 26;
    /// Largest register the automatic backend sends to the exact simulator.
    int auto_exact_limit = 12;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
    /// Memory for cached noiseless prefix states in the trajectory backend.
    std::size_t snapshot_budget_bytes = std::size_t{256} << 20;
};

namespace detail {

inline void check_program(const NoisyProgram& program) {
    const int n = program.n_qubits();
    auto check_q = [n](int q) {
        if (q < 0 || q >= n)
            throw std::invalid_argument("program references qubit " + std::to_string(q));
    };
    for (std::size_t k = 0; k < program.steps.size(); ++k) {
        const auto& step = program.steps[k];
        if (std::holds_alternative<MeasureAll>(step.instruction) && k + 1 != program.steps.size())
            throw std::invalid_argument("program: measurement must be the last instruction");
        std::visit(
            [&](const auto& inst) {
                using T = std::decay_t<decltype(inst)>;
                if constexpr (std::is_same_v<T, LocalU>) {
                    check_q(inst.qubit);
                    if (!is_single_qubit(inst.kind))
                        throw std::invalid_argument("program: LocalU with a non single-qubit gate");
                } else if constexpr (std::is_same_v<T, GlobalU>) {
                    if (!is_single_qubit(inst.kind))
                        throw std::invalid_argument("program: GlobalU with a non single-qubit gate");
                } else if constexpr (std::is_same_v<T, GlobalCz>) {
                    for (const auto& p : inst.pairs) {
                        check_q(p.address);
                        check_q(p.data);
                    }
                }
            },
            step.instruction);
        for (const auto& ch : step.channels) {
            if (const auto* c1 = std::get_if<OneQubitNoise>(&ch)) {
                check_q(c1->qubit);
                c1->channel.validate();
            } else {
                const auto& c2 = std::get<TwoQubitNoise>(ch);
                check_q(c2.first);
                check_q(c2.second);
                c2.channel.validate();
            }
        }
    }
}

template <class State>
void apply_instruction(State& state, const Instruction& inst) {
    if (const auto* u = std::get_if<LocalU>(&inst)) {
        state.apply(u->kind, u->angle, u->qubit);
    } else if (const auto* g = std::get_if<GlobalU>(&inst)) {
        for (int q = 0; q < state.n_qubits(); ++q)
            state.apply(g->kind, g->angle, q);
    } else if (const auto* cz = std::get_if<GlobalCz>(&inst)) {
        for (const auto& p : cz->pairs)
            state.apply_cz(p.address, p.data);
    }
    // Moves leave the state untouched; measurement is handled by the caller.
}

inline bool is_measurement(const NoisyStep& step) { return std::holds_alternative<MeasureAll>(step.instruction); }

inline unsigned thread_count(const SimulatorOptions& options) {
    unsigned t = options.threads ? options.threads : std::thread::hardware_concurrency();
    return std::max(1u, t);
}

/// Inverse-CDF sampler over a probability vector (normalised by its sum).
class OutcomeSampler {
public:
    explicit OutcomeSampler(std::span<const double> probabilities) : cdf_(probabilities.size()) {
        double acc = 0;
        for (std::size_t k = 0; k < probabilities.size(); ++k) {
            acc += std::max(0.0, probabilities[k]);
            cdf_[k] = acc;
        }
        if (!(acc > 0))
            throw std::runtime_error("OutcomeSampler: zero total probability");
    }

    std::uint64_t operator()(double u) const {
        const double target = u * cdf_.back();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
        if (it == cdf_.end())
            --it;
        return static_cast<std::uint64_t>(it - cdf_.begin());
    }

private:
    std::vector<double> cdf_;
};

} // namespace detail

/// Evolves the density matrix through the whole program, including the
/// readout channels. `observer` sees the state after every step.
inline DensityMatrix evolve_density_matrix(const NoisyProgram& program,
                                           const std::function<void(std::size_t, const DensityMatrix&)>& observer = {},
                                           const SimulatorOptions& options = {}) {
    if (program.n_qubits() > options.max_exact_qubits)
        throw std::invalid_argument("run_exact: register too large for the density-matrix backend");
    detail::check_program(program);
    DensityMatrix rho(program.n_qubits());
    for (std::size_t k = 0; k < program.steps.size(); ++k) {
        const auto& step = program.steps[k];
        detail::apply_instruction(rho, step.instruction);
        for (const auto& ch : step.channels) {
            if (const auto* c1 = std::get_if<OneQubitNoise>(&ch))
                rho.apply_channel(c1->channel, c1->qubit);
            else {
                const auto& c2 = std::get<TwoQubitNoise>(ch);
                rho.apply_channel(c2.channel, c2.first, c2.second);
            }
        }
        if (observer)
            observer(k, rho);
    }
    return rho;
}

/// Exact outcome distribution (density-matrix diagonal at readout).
inline std::vector<double> exact_distribution(const NoisyProgram& program, const SimulatorOptions& options = {}) {
    return evolve_density_matrix(program, {}, options).diagonal();
}

inline ShotCounts sample_counts(std::span<const double> probabilities, int n_qubits, std::uint64_t shots,
                                std::uint64_t seed) {
    detail::OutcomeSampler sampler(probabilities);
    CounterRng rng(derive_key(seed, {0x5a4d'504cULL}));
    ShotCounts out{n_qubits, shots, {}};
    for (std::uint64_t s = 0; s < shots; ++s)
        ++out.counts[sampler(rng.uniform())];
    return out;
}

/// Density-matrix backend: exact evolution, then `shots` samples from the
/// final diagonal.
inline ShotCounts run_exact(const NoisyProgram& program, std::uint64_t shots, std::uint64_t seed,
                            const SimulatorOptions& options = {}) {
    const auto probs = exact_distribution(program, options);
    return sample_counts(probs, program.n_qubits(), shots, seed);
}

namespace detail {

inline Pauli sample_pauli(const PauliChannel1Q& ch, double u) {
    if (u < ch.px)
        return Pauli::x;
    if (u < ch.px + ch.py)
        return Pauli::y;
    if (u < ch.px + ch.py + ch.pz)
        return Pauli::z;
    return Pauli::i;
}

// Returns a 2q label 4*first + second, 0 for identity.
inline std::size_t sample_pauli(const PauliChannel2Q& ch, double u) {
    double acc = 0;
    for (std::size_t k = 1; k < 16; ++k) {
        acc += ch.p[k];
        if (u < acc)
            return k;
    }
    return 0;
}

struct SampledError {
    std::size_t step;
    int qubit;
    Pauli pauli;
};

// One uniform draw per channel application in program order, then one for
// the measurement.
inline double sample_errors(const NoisyProgram& program, CounterRng& rng, std::vector<SampledError>& errors) {
    errors.clear();
    for (std::size_t k = 0; k < program.steps.size(); ++k) {
        for (const auto& ch : program.steps[k].channels) {
            const double u = rng.uniform();
            if (const auto* c1 = std::get_if<OneQubitNoise>(&ch)) {
                if (auto p = sample_pauli(c1->channel, u); p != Pauli::i)
                    errors.push_back({k, c1->qubit, p});
            } else {
                const auto& c2 = std::get<TwoQubitNoise>(ch);
                const std::size_t label = sample_pauli(c2.channel, u);
                if (auto p = static_cast<Pauli>(label / 4); p != Pauli::i)
                    errors.push_back({k, c2.first, p});
                if (auto p = static_cast<Pauli>(label % 4); p != Pauli::i)
                    errors.push_back({k, c2.second, p});
            }
        }
    }
    return rng.uniform();
}

inline std::uint64_t measure(const StateVector& psi, double u) {
    const auto amps = psi.amplitudes();
    double acc = 0;
    std::size_t last_nonzero = 0;
    for (std::size_t k = 0; k < amps.size(); ++k) {
        const double p = std::norm(amps[k]);
        if (p == 0)
            continue;
        acc += p;
        last_nonzero = k;
        if (u < acc)
            return k;
    }
    return last_nonzero;
}

// Noiseless states after each instruction, kept at a stride that fits the
// memory budget. Errors never occur before the first sampled one, so every
// trajectory can start from the cached state preceding it.
class PrefixCache {
public:
    PrefixCache(const NoisyProgram& program, std::size_t budget_bytes) : program_(program) {
        const std::size_t steps = program.steps.size();
        const std::size_t bytes = (std::size_t{16} << program.n_qubits());
        const std::size_t slots = std::max<std::size_t>(1, budget_bytes / bytes);
        stride_ = std::max<std::size_t>(1, (steps + slots - 1) / slots);
        StateVector psi(program.n_qubits());
        for (std::size_t k = 0; k < steps; ++k) {
            apply_instruction(psi, program.steps[k].instruction);
            if (k % stride_ == stride_ - 1 || k + 1 == steps)
                cached_.emplace_back(k, psi);
        }
        final_ = cached_.empty() ? StateVector(program.n_qubits()) : cached_.back().second;
        final_sampler_.emplace(final_.probabilities());
    }

    /// Noiseless state after instruction `step`.
    StateVector state_after(std::size_t step) const {
        std::size_t from = 0;
        StateVector psi(program_.n_qubits());
        for (auto it = cached_.rbegin(); it != cached_.rend(); ++it) {
            if (it->first <= step) {
                psi = it->second;
                from = it->first + 1;
                break;
            }
        }
        for (std::size_t k = from; k <= step; ++k)
            apply_instruction(psi, program_.steps[k].instruction);
        return psi;
    }

    std::uint64_t sample_noiseless(double u) const { return (*final_sampler_)(u); }

private:
    const NoisyProgram& program_;
    std::size_t stride_ = 1;
    std::vector<std::pair<std::size_t, StateVector>> cached_;
    StateVector final_{1};
    std::optional<OutcomeSampler> final_sampler_;
};

} // namespace detail

/// Pauli-trajectory backend. Shot s draws its errors from the stream
/// derive_key(seed, {s}); counts do not depend on the thread count.
inline ShotCounts run_trajectories(const NoisyProgram& program, std::uint64_t shots, std::uint64_t seed,
                                   const SimulatorOptions& options = {}) {
    if (program.n_qubits() > options.max_trajectory_qubits)
        throw std::invalid_argument("run_trajectories: register too large");
    detail::check_program(program);
    const detail::PrefixCache cache(program, options.snapshot_budget_bytes);

    auto worker = [&](std::uint64_t begin, std::uint64_t end, std::map<std::uint64_t, std::uint64_t>& counts) {
        std::vector<detail::SampledError> errors;
        for (std::uint64_t shot = begin; shot < end; ++shot) {
            CounterRng rng(derive_key(seed, {shot}));
            const double u = detail::sample_errors(program, rng, errors);
            if (errors.empty()) {
                ++counts[cache.sample_noiseless(u)];
                continue;
            }
            const std::size_t first = errors.front().step;
            StateVector psi = cache.state_after(first);
            auto next = errors.begin();
            for (std::size_t k = first; k < program.steps.size(); ++k) {
                if (k != first)
                    detail::apply_instruction(psi, program.steps[k].instruction);
                for (; next != errors.end() && next->step == k; ++next)
                    psi.apply_pauli(next->pauli, next->qubit);
            }
            ++counts[detail::measure(psi, u)];
        }
    };

    const unsigned n_threads = static_cast<unsigned>(std::min<std::uint64_t>(detail::thread_count(options), std::max<std::uint64_t>(1, shots)));
    std::vector<std::map<std::uint64_t, std::uint64_t>> partial(n_threads);
    if (n_threads == 1) {
        worker(0, shots, partial[0]);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (shots + n_threads - 1) / n_threads;
        for (unsigned t = 0; t < n_threads; ++t) {
            const std::uint64_t begin = std::min<std::uint64_t>(shots, t * chunk);
            const std::uint64_t end = std::min<std::uint64_t>(shots, begin + chunk);
            pool.emplace_back(worker, begin, end, std::ref(partial[t]));
        }
        for (auto& th : pool)
            th.join();
    }

    ShotCounts out{program.n_qubits(), shots, {}};
    for (const auto& part : partial)
        for (const auto& [outcome, n] : part)
            out.counts[outcome] += n;
    return out;
}

/// An explicit exact request is honoured up to max_exact_qubits; beyond that
/// it falls back to trajectories.
inline Backend resolve_backend(Backend requested, int n_qubits, const SimulatorOptions& options = {}) {
    if (requested == Backend::automatic)
        return n_qubits <= options.auto_exact_limit ? Backend::exact : Backend::trajectories;
    if (requested == Backend::exact && n_qubits > options.max_exact_qubits)
        return Backend::trajectories;
    return requested;
}

inline ShotCounts run(const NoisyProgram& program, std::uint64_t shots, std::uint64_t seed, Backend backend,
                      const SimulatorOptions& options = {}) {
    return resolve_backend(backend, program.n_qubits(), options) == Backend::exact
               ? run_exact(program, shots, seed, options)
               : run_trajectories(program, shots, seed, options);
}

/// <Z_j> conditioned on address i from an outcome distribution, at index
/// i * n_d + j. Addresses with zero probability give 0.
inline std::vector<double> conditional_expectations(std::span<const double> probabilities, const QCrankConfig& cfg) {
    const std::size_t n_addr = cfg.num_addresses();
    const std::size_t nd = static_cast<std::size_t>(cfg.data_qubits());
    std::vector<double> weight(n_addr, 0.0);
    std::vector<double> signed_sum(cfg.capacity(), 0.0);
    for (std::size_t k = 0; k < probabilities.size(); ++k) {
        const double p = probabilities[k];
        if (p == 0)
            continue;
        const std::size_t i = k & (n_addr - 1);
        weight[i] += p;
        for (std::size_t j = 0; j < nd; ++j)
            signed_sum[i * nd + j] += (k >> (static_cast<std::size_t>(cfg.address_qubits()) + j) & 1u) ? -p : p;
    }
    for (std::size_t i = 0; i < n_addr; ++i)
        for (std::size_t j = 0; j < nd; ++j)
            signed_sum[i * nd + j] = weight[i] > 0 ? signed_sum[i * nd + j] / weight[i] : 0.0;
    return signed_sum;
}

/// Analytic conditional <Z> of a noiseless program (statevector, no sampling).
inline std::vector<double> exact_expectations(const NoisyProgram& program) {
    if (!program.is_noiseless())
        throw std::invalid_argument("exact_expectations: program carries noise channels");
    if (program.n_qubits() > 13)
        throw std::invalid_argument("exact_expectations: register too large");
    detail::check_program(program);
    StateVector psi(program.n_qubits());
    for (const auto& step : program.steps)
        detail::apply_instruction(psi, step.instruction);
    return conditional_expectations(psi.probabilities(), program.config);
}

} // namespace qcrank

#endif // QCRANK_SIMULATOR_HPP
