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

#ifndef QCRANK_NOISE_HPP
#define QCRANK_NOISE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qcrank/circuit.hpp"
#include "qcrank/dpqa.hpp"

namespace qcrank {

/// Single-qubit Paulis; the enum value is the index used by channel tables.
enum class Pauli { i = 0, x = 1, y = 2, z = 3 };

inline int pauli_x_bit(int p) { return p == 1 || p == 2; }
inline int pauli_z_bit(int p) { return p == 2 || p == 3; }

inline Mat2 pauli_matrix(Pauli p) {
    switch (p) {
    case Pauli::i: return {1, 0, 0, 1};
    case Pauli::x: return gate_matrix(GateKind::x, 0);
    case Pauli::y: return gate_matrix(GateKind::y, 0);
    case Pauli::z: return gate_matrix(GateKind::z, 0);
    }
    return {};
}

/// rho -> (1 - px - py - pz) rho + px X rho X + py Y rho Y + pz Z rho Z.
struct PauliChannel1Q {
    double px = 0.0;
    double py = 0.0;
    double pz = 0.0;

    /// Completely mixed with probability p: each Pauli carries p / 4.
    static PauliChannel1Q depolarizing(double p) { return {p / 4, p / 4, p / 4}; }
    /// Every Pauli carries p, total 3p.
    static PauliChannel1Q symmetric(double p) { return {p, p, p}; }

    double total() const noexcept { return px + py + pz; }
    bool is_identity() const noexcept { return px == 0 && py == 0 && pz == 0; }

    /// Probabilities of I, X, Y, Z.
    std::array<double, 4> probabilities() const { return {1.0 - total(), px, py, pz}; }

    PauliChannel1Q scaled(double s) const { return {px * s, py * s, pz * s}; }

    void validate() const {
        if (!(px >= 0 && py >= 0 && pz >= 0))
            throw std::invalid_argument("PauliChannel1Q: negative probability");
        if (!(total() <= 1.0))
            throw std::invalid_argument("PauliChannel1Q: probabilities sum above 1");
    }

    friend bool operator==(const PauliChannel1Q&, const PauliChannel1Q&) = default;
};

/// Two-qubit Pauli channel. p[4*a + b] is the probability of Pauli a on the
/// first qubit and Pauli b on the second (0=I, 1=X, 2=Y, 3=Z); p[0] is
/// implied by normalisation and kept at zero.
struct PauliChannel2Q {
    std::array<double, 16> p{};

    /// p_IZ = p_ZI = p_ZZ = z_class, every other non-identity term = other_class.
    static PauliChannel2Q z_biased(double z_class, double other_class) {
        PauliChannel2Q ch;
        for (std::size_t k = 1; k < 16; ++k)
            ch.p[k] = other_class;
        ch.p[index(Pauli::i, Pauli::z)] = z_class;
        ch.p[index(Pauli::z, Pauli::i)] = z_class;
        ch.p[index(Pauli::z, Pauli::z)] = z_class;
        return ch;
    }

    static constexpr std::size_t index(Pauli first, Pauli second) {
        return 4 * static_cast<std::size_t>(first) + static_cast<std::size_t>(second);
    }

    double total() const noexcept {
        double s = 0;
        for (std::size_t k = 1; k < 16; ++k)
            s += p[k];
        return s;
    }
    bool is_identity() const noexcept { return total() == 0; }

    std::array<double, 16> probabilities() const {
        auto out = p;
        out[0] = 1.0 - total();
        return out;
    }

    PauliChannel2Q scaled(double s) const {
        PauliChannel2Q ch;
        for (std::size_t k = 1; k < 16; ++k)
            ch.p[k] = p[k] * s;
        return ch;
    }

    void validate() const {
        if (p[0] != 0)
            throw std::invalid_argument("PauliChannel2Q: identity term must be implicit");
        for (double v : p)
            if (!(v >= 0))
                throw std::invalid_argument("PauliChannel2Q: negative probability");
        if (!(total() <= 1.0))
            throw std::invalid_argument("PauliChannel2Q: probabilities sum above 1");
    }

    friend bool operator==(const PauliChannel2Q&, const PauliChannel2Q&) = default;
};

/// Kraus operators sqrt(p_P) P of a single-qubit Pauli channel.
inline std::vector<Mat2> kraus_operators(const PauliChannel1Q& ch) {
    const auto probs = ch.probabilities();
    std::vector<Mat2> ops;
    for (int k = 0; k < 4; ++k) {
        Mat2 m = pauli_matrix(static_cast<Pauli>(k));
        for (auto& v : m)
            v *= std::sqrt(probs[static_cast<std::size_t>(k)]);
        ops.push_back(m);
    }
    return ops;
}

enum class NoiseSource { local_u, global_u, move, spectator, cz, spam };

inline const char* to_string(NoiseSource s) {
    switch (s) {
    case NoiseSource::local_u: return "lue";
    case NoiseSource::global_u: return "gue";
    case NoiseSource::move: return "mve";
    case NoiseSource::spectator: return "spe";
    case NoiseSource::cz: return "cz";
    case NoiseSource::spam: return "spam";
    }
    return "?";
}

/// How a single depolarizing strength p turns into Pauli probabilities.
/// `mixed` matches the usual simulator convention (p / 4 each); `per_pauli`
/// assigns p to each of X, Y and Z.
enum class DepolarizingConvention { mixed, per_pauli };

inline const char* to_string(DepolarizingConvention c) {
    return c == DepolarizingConvention::mixed ? "mixed" : "per_pauli";
}

/// Channel strengths at scale 1 plus a global multiplier. Accessors return
/// the scaled channels that the simulators actually apply.
struct NoiseParams {
    double lue = 0.0;
    double gue = 0.0;
    DepolarizingConvention depolarizing = DepolarizingConvention::mixed;
    PauliChannel1Q mve;
    PauliChannel1Q spe;
    PauliChannel2Q cz;
    PauliChannel1Q spam;
    double scale = 1.0;

    PauliChannel1Q one_qubit(NoiseSource source) const {
        switch (source) {
        case NoiseSource::local_u: return depolarizing_channel(lue * scale);
        case NoiseSource::global_u: return depolarizing_channel(gue * scale);
        case NoiseSource::move: return mve.scaled(scale);
        case NoiseSource::spectator: return spe.scaled(scale);
        case NoiseSource::spam: return spam.scaled(scale);
        case NoiseSource::cz: break;
        }
        throw std::invalid_argument("one_qubit: cz is a two-qubit channel");
    }

    PauliChannel2Q two_qubit() const { return cz.scaled(scale); }

    PauliChannel1Q depolarizing_channel(double p) const {
        return depolarizing == DepolarizingConvention::mixed ? PauliChannel1Q::depolarizing(p)
                                                             : PauliChannel1Q::symmetric(p);
    }

    void validate() const {
        if (!(scale >= 0))
            throw std::invalid_argument("NoiseParams: negative scale");
        for (auto s : {NoiseSource::local_u, NoiseSource::global_u, NoiseSource::move, NoiseSource::spectator,
                       NoiseSource::spam})
            one_qubit(s).validate();
        two_qubit().validate();
    }
};

/// Neutral-atom baseline: local U depol 4e-3, global U depol 4e-4, move
/// (3e-5, 3e-5, 3e-3), spectator (5e-4, 5e-4, 2.5e-3), CZ 1.5e-3 on
/// IZ/ZI/ZZ and 1.5e-4 on the other twelve terms, readout (6e-3, 0, 0).
inline NoiseParams baseline_params() {
    NoiseParams p;
    p.lue = 4e-3;
    p.gue = 4e-4;
    p.mve = {3e-5, 3e-5, 3e-3};
    p.spe = {5e-4, 5e-4, 2.5e-3};
    p.cz = PauliChannel2Q::z_biased(1.5e-3, 1.5e-4);
    p.spam = {6e-3, 0, 0};
    p.scale = 1.0;
    return p;
}

inline NoiseParams zero_noise() {
    NoiseParams p = baseline_params();
    p.scale = 0.0;
    return p;
}

/// Multiplies every probability by s.
inline NoiseParams scale_params(const NoiseParams& params, double s) {
    if (!(s >= 0))
        throw std::invalid_argument("scale_params: scale must be non-negative");
    NoiseParams out = params;
    out.scale = params.scale * s;
    out.validate();
    return out;
}

struct OneQubitNoise {
    NoiseSource source;
    PauliChannel1Q channel;
    int qubit;
};

struct TwoQubitNoise {
    NoiseSource source;
    PauliChannel2Q channel;
    int first;
    int second;
};

using ChannelApplication = std::variant<OneQubitNoise, TwoQubitNoise>;

/// An instruction and its channels. Channels act after the instruction,
/// except for MeasureAll where they act before readout.
struct NoisyStep {
    Instruction instruction;
    std::vector<ChannelApplication> channels;
};

struct NoisyProgram {
    QCrankConfig config;
    std::vector<NoisyStep> steps;

    int n_qubits() const noexcept { return config.num_qubits(); }

    bool is_noiseless() const {
        for (const auto& s : steps)
            if (!s.channels.empty())
                return false;
        return true;
    }

    std::size_t count_channels(NoiseSource source) const {
        std::size_t n = 0;
        for (const auto& s : steps)
            for (const auto& c : s.channels)
                n += std::visit([&](const auto& ch) { return ch.source == source; }, c);
        return n;
    }
};

/// Attaches channels to every instruction. Identity channels are dropped,
/// so zero-strength noise yields the bare schedule.
inline NoisyProgram attach_noise(const Schedule& schedule, const NoiseParams& params) {
    params.validate();
    const int n = schedule.config().num_qubits();
    NoisyProgram program{schedule.config(), {}};
    program.steps.reserve(schedule.instructions().size());

    auto add1 = [](NoisyStep& step, NoiseSource source, const PauliChannel1Q& ch, int q) {
        if (!ch.is_identity())
            step.channels.emplace_back(OneQubitNoise{source, ch, q});
    };

    const auto lue = params.one_qubit(NoiseSource::local_u);
    const auto gue = params.one_qubit(NoiseSource::global_u);
    const auto mve = params.one_qubit(NoiseSource::move);
    const auto spe = params.one_qubit(NoiseSource::spectator);
    const auto spam = params.one_qubit(NoiseSource::spam);
    const auto cz = params.two_qubit();

    for (const auto& inst : schedule.instructions()) {
        NoisyStep step{inst, {}};
        if (const auto* u = std::get_if<LocalU>(&inst)) {
            add1(step, NoiseSource::local_u, lue, u->qubit);
        } else if (std::holds_alternative<GlobalU>(inst)) {
            for (int q = 0; q < n; ++q)
                add1(step, NoiseSource::global_u, gue, q);
        } else if (const auto* mv = std::get_if<MoveStep>(&inst)) {
            for (const auto& m : mv->moves)
                add1(step, NoiseSource::move, mve, m.atom);
        } else if (const auto* pulse = std::get_if<GlobalCz>(&inst)) {
            if (!cz.is_identity())
                for (const auto& pr : pulse->pairs)
                    step.channels.emplace_back(TwoQubitNoise{NoiseSource::cz, cz, pr.address, pr.data});
            for (int q : pulse->spectators)
                add1(step, NoiseSource::spectator, spe, q);
        } else if (std::holds_alternative<MeasureAll>(inst)) {
            for (int q = 0; q < n; ++q)
                add1(step, NoiseSource::spam, spam, q);
        }
        program.steps.push_back(std::move(step));
    }
    return program;
}

/// Reads a flat `key = value` file. Keys: lue.p, gue.p, mve.px/py/pz,
/// spe.px/py/pz, cz.pz_class, cz.other_class, spam.px, scale, plus
/// `depolarizing = mixed | per_pauli`. Keys not present keep the value from
/// `base`; '#' starts a comment.
inline NoiseParams read_noise_config(std::istream& in, NoiseParams base = baseline_params()) {
    double pz_class = base.cz.p[PauliChannel2Q::index(Pauli::z, Pauli::z)];
    double other_class = base.cz.p[PauliChannel2Q::index(Pauli::x, Pauli::x)];
    std::map<std::string, double*> keys = {
        {"lue.p", &base.lue},          {"gue.p", &base.gue},          {"mve.px", &base.mve.px},
        {"mve.py", &base.mve.py},      {"mve.pz", &base.mve.pz},      {"spe.px", &base.spe.px},
        {"spe.py", &base.spe.py},      {"spe.pz", &base.spe.pz},      {"cz.pz_class", &pz_class},
        {"cz.other_class", &other_class}, {"spam.px", &base.spam.px}, {"scale", &base.scale},
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto eq = line.find('=');
        std::istringstream key_stream(line.substr(0, eq));
        std::string key;
        key_stream >> key;
        if (key.empty())
            continue;
        if (eq == std::string::npos)
            throw std::runtime_error("noise config line " + std::to_string(lineno) + ": missing '='");
        if (key == "depolarizing") {
            std::istringstream value_stream(line.substr(eq + 1));
            std::string value;
            std::string rest;
            value_stream >> value;
            if (value == "mixed" && !(value_stream >> rest))
                base.depolarizing = DepolarizingConvention::mixed;
            else if (value == "per_pauli" && !(value_stream >> rest))
                base.depolarizing = DepolarizingConvention::per_pauli;
            else
                throw std::runtime_error("noise config line " + std::to_string(lineno) + ": bad depolarizing convention");
            continue;
        }
        auto it = keys.find(key);
        if (it == keys.end())
            throw std::runtime_error("noise config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        std::istringstream value_stream(line.substr(eq + 1));
        double value = 0;
        std::string rest;
        if (!(value_stream >> value) || (value_stream >> rest))
            throw std::runtime_error("noise config line " + std::to_string(lineno) + ": bad value");
        *it->second = value;
    }
    base.cz = PauliChannel2Q::z_biased(pz_class, other_class);
    base.validate();
    return base;
}

/// Writes the keys read_noise_config understands. The cz channel is written
/// by class, so only z_biased channels round-trip exactly.
inline void write_noise_config(std::ostream& out, const NoiseParams& p) {
    const auto old = out.precision(17);
    out << "lue.p = " << p.lue << '\n'
        << "gue.p = " << p.gue << '\n'
        << "mve.px = " << p.mve.px << '\n'
        << "mve.py = " << p.mve.py << '\n'
        << "mve.pz = " << p.mve.pz << '\n'
        << "spe.px = " << p.spe.px << '\n'
        << "spe.py = " << p.spe.py << '\n'
        << "spe.pz = " << p.spe.pz << '\n'
        << "cz.pz_class = " << p.cz.p[PauliChannel2Q::index(Pauli::z, Pauli::z)] << '\n'
        << "cz.other_class = " << p.cz.p[PauliChannel2Q::index(Pauli::x, Pauli::x)] << '\n'
        << "spam.px = " << p.spam.px << '\n'
        << "scale = " << p.scale << '\n'
        << "depolarizing = " << to_string(p.depolarizing) << '\n';
    out.precision(old);
}

} // namespace qcrank

#endif // QCRANK_NOISE_HPP
