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

#ifndef QCRANK_DPQA_HPP
#define QCRANK_DPQA_HPP

// Single-zone neutral-atom compiler.
//
// Layout: data qubit j rests at column j mod n_a of data row j / n_a. Each
// data site has an address spot next to it (same column and row); the
// address row starts next to data row 0 and is the only thing that moves.
// Physical y coordinate is 2*row for address spots and 2*row + 1 for data
// spots. Columns outside [0, n_a) are staging columns used while the
// address row is cyclically shifted.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qcrank/angles.hpp"
#include "qcrank/builders.hpp"
#include "qcrank/circuit.hpp"
#include "qcrank/config.hpp"

namespace qcrank {

enum class Slot { address, data };

struct Site {
    int column = 0;
    int row = 0;
    Slot slot = Slot::data;

    int x() const noexcept { return column; }
    int y() const noexcept { return 2 * row + (slot == Slot::data ? 1 : 0); }

    friend bool operator==(const Site&, const Site&) = default;
};

inline std::string to_string(const Site& s) {
    return "(" + std::to_string(s.x()) + "," + std::to_string(s.y()) + ")";
}

/// "a<b>" for address qubits, "d<j>" for data qubits.
inline std::string qubit_name(const QCrankConfig& cfg, int qubit) {
    return cfg.is_address(qubit) ? "a" + std::to_string(qubit)
                                 : "d" + std::to_string(qubit - cfg.address_qubits());
}

/// Current site of every atom, indexed by qubit.
class Geometry {
public:
    Geometry(QCrankConfig cfg, std::vector<Site> sites) : cfg_(cfg), sites_(std::move(sites)) {
        if (static_cast<int>(sites_.size()) != cfg_.num_qubits())
            throw std::invalid_argument("Geometry: one site per qubit required");
        for (std::size_t a = 0; a < sites_.size(); ++a)
            for (std::size_t b = a + 1; b < sites_.size(); ++b)
                if (sites_[a] == sites_[b])
                    throw std::invalid_argument("Geometry: two atoms share a site");
    }

    const QCrankConfig& config() const noexcept { return cfg_; }
    int columns() const noexcept { return cfg_.address_qubits(); }
    int data_rows() const noexcept { return cfg_.data_rows(); }
    const std::vector<Site>& sites() const noexcept { return sites_; }
    const Site& site_of(int qubit) const { return sites_.at(static_cast<std::size_t>(qubit)); }

    std::optional<int> occupant(const Site& site) const {
        for (std::size_t q = 0; q < sites_.size(); ++q)
            if (sites_[q] == site)
                return static_cast<int>(q);
        return std::nullopt;
    }

    void place(int qubit, const Site& site) { sites_.at(static_cast<std::size_t>(qubit)) = site; }

private:
    QCrankConfig cfg_;
    std::vector<Site> sites_;
};

inline Geometry plan_layout(const QCrankConfig& cfg) {
    const int na = cfg.address_qubits();
    std::vector<Site> sites;
    sites.reserve(static_cast<std::size_t>(cfg.num_qubits()));
    for (int b = 0; b < na; ++b)
        sites.push_back({b, 0, Slot::address});
    for (int j = 0; j < cfg.data_qubits(); ++j)
        sites.push_back({j % na, j / na, Slot::data});
    return Geometry(cfg, std::move(sites));
}

struct AtomMove {
    int atom;
    Site from;
    Site to;
};

/// Atoms carried together by the AOD in one step.
struct MoveStep {
    std::vector<AtomMove> moves;
};

namespace detail {
inline int sign(int v) { return (v > 0) - (v < 0); }
} // namespace detail

/// Checks one move step against the current occupancy. Returns a
/// description of the first violation, or nullopt if the step is legal.
inline std::optional<std::string> check_aod(const MoveStep& step, const Geometry& occupancy) {
    std::set<int> moving;
    for (const auto& m : step.moves) {
        if (m.atom < 0 || m.atom >= occupancy.config().num_qubits())
            return "unknown atom " + std::to_string(m.atom);
        if (!moving.insert(m.atom).second)
            return "atom " + std::to_string(m.atom) + " listed twice";
        if (!(occupancy.site_of(m.atom) == m.from))
            return "atom " + std::to_string(m.atom) + " is not at " + to_string(m.from);
    }
    for (std::size_t a = 0; a < step.moves.size(); ++a) {
        const auto& ma = step.moves[a];
        for (std::size_t b = a + 1; b < step.moves.size(); ++b) {
            const auto& mb = step.moves[b];
            if (detail::sign(ma.from.x() - mb.from.x()) != detail::sign(ma.to.x() - mb.to.x()) ||
                detail::sign(ma.from.y() - mb.from.y()) != detail::sign(ma.to.y() - mb.to.y()))
                return "order inversion between atoms " + std::to_string(ma.atom) + " and " +
                       std::to_string(mb.atom);
            if (ma.to == mb.to)
                return "atoms " + std::to_string(ma.atom) + " and " + std::to_string(mb.atom) +
                       " share destination " + to_string(ma.to);
        }
        if (auto other = occupancy.occupant(ma.to); other && !moving.contains(*other))
            return "destination " + to_string(ma.to) + " held by stationary atom " + std::to_string(*other);
    }
    return std::nullopt;
}

struct CzPair {
    int address;
    int data;

    friend bool operator==(const CzPair&, const CzPair&) = default;
};

/// Global Rydberg pulse: every co-located (address, data) pair gets a CZ,
/// every other atom is a spectator.
struct GlobalCz {
    std::vector<CzPair> pairs;
    std::vector<int> spectators;
};

struct GlobalU {
    GateKind kind;
    double angle = 0.0;
};

struct LocalU {
    int qubit;
    GateKind kind;
    double angle = 0.0;
};

struct MeasureAll {};

using Instruction = std::variant<MoveStep, GlobalCz, GlobalU, LocalU, MeasureAll>;

/// Serialised instruction stream plus the geometry it starts from.
class Schedule {
public:
    explicit Schedule(Geometry initial)
        : initial_(std::move(initial)), touches_(static_cast<std::size_t>(initial_.config().num_qubits()), 0) {}

    const QCrankConfig& config() const noexcept { return initial_.config(); }
    const Geometry& initial_geometry() const noexcept { return initial_; }
    const std::vector<Instruction>& instructions() const noexcept { return instructions_; }
    const std::vector<int>& touch_counts() const noexcept { return touches_; }

    void append(Instruction inst) {
        if (const auto* step = std::get_if<MoveStep>(&inst))
            for (const auto& m : step->moves)
                ++touches_.at(static_cast<std::size_t>(m.atom));
        instructions_.push_back(std::move(inst));
    }

    std::size_t count_moves() const { return count<MoveStep>(); }
    std::size_t count_pulses() const { return count<GlobalCz>(); }

private:
    template <class T>
    std::size_t count() const {
        return static_cast<std::size_t>(std::count_if(instructions_.begin(), instructions_.end(),
                                                      [](const Instruction& i) { return std::holds_alternative<T>(i); }));
    }

    Geometry initial_;
    std::vector<Instruction> instructions_;
    std::vector<int> touches_;
};

/// Number of move steps each atom takes part in, recomputed from the stream.
inline std::vector<int> move_touch_counts(const Schedule& schedule) {
    std::vector<int> counts(static_cast<std::size_t>(schedule.config().num_qubits()), 0);
    for (const auto& inst : schedule.instructions())
        if (const auto* step = std::get_if<MoveStep>(&inst))
            for (const auto& m : step->moves)
                ++counts.at(static_cast<std::size_t>(m.atom));
    return counts;
}

/// Moves the address row between pulses. A cyclic shift by d columns goes
/// in the direction with fewer wrapping atoms (ties go left): first the
/// whole row moves, wrapping atoms parking in staging columns, then only
/// the wrapping atoms travel back across the array to their targets.
/// Row changes move the whole address row one data row per step.
class AddressRouter {
public:
    explicit AddressRouter(Geometry geometry) : geo_(std::move(geometry)) {}

    const Geometry& geometry() const noexcept { return geo_; }

    /// target_columns[b] is the column address qubit b must reach.
    std::vector<MoveStep> route(const std::vector<int>& target_columns, int target_row) {
        const auto& cfg = geo_.config();
        const int na = cfg.address_qubits();
        if (static_cast<int>(target_columns.size()) != na)
            throw std::invalid_argument("route: one target column per address qubit required");
        if (target_row < 0 || target_row >= cfg.data_rows())
            throw std::invalid_argument("route: target row out of range");

        const int shift = (((geo_.site_of(0).column - target_columns[0]) % na) + na) % na;
        for (int b = 0; b < na; ++b) {
            const int expected = (((geo_.site_of(b).column - shift) % na) + na) % na;
            if (target_columns[static_cast<std::size_t>(b)] != expected)
                throw std::invalid_argument("infeasible pairing: targets are not a cyclic shift of the address row");
        }

        std::vector<MoveStep> steps;
        if (shift != 0) {
            const bool left = shift <= na - shift;
            const int travel = left ? -shift : na - shift;
            MoveStep all;
            MoveStep wrap;
            for (int b = 0; b < na; ++b) {
                const Site from = geo_.site_of(b);
                Site staged = from;
                staged.column += travel;
                all.moves.push_back({b, from, staged});
                if (staged.column < 0 || staged.column >= na) {
                    Site home = staged;
                    home.column += left ? na : -na;
                    wrap.moves.push_back({b, staged, home});
                }
            }
            commit(all, steps);
            commit(wrap, steps);
        }
        while (geo_.site_of(0).row != target_row) {
            const int dir = target_row > geo_.site_of(0).row ? 1 : -1;
            MoveStep vertical;
            for (int b = 0; b < na; ++b) {
                const Site from = geo_.site_of(b);
                Site to = from;
                to.row += dir;
                vertical.moves.push_back({b, from, to});
            }
            commit(vertical, steps);
        }
        return steps;
    }

    /// Pairs formed by co-located atoms, in column order, and the spectators.
    GlobalCz pulse() const {
        const auto& cfg = geo_.config();
        GlobalCz cz;
        std::vector<bool> paired(static_cast<std::size_t>(cfg.num_qubits()), false);
        for (int col = 0; col < cfg.address_qubits(); ++col) {
            for (int b = 0; b < cfg.address_qubits(); ++b) {
                const Site s = geo_.site_of(b);
                if (s.column != col)
                    continue;
                if (auto d = geo_.occupant({s.column, s.row, Slot::data})) {
                    cz.pairs.push_back({b, *d});
                    paired[static_cast<std::size_t>(b)] = paired[static_cast<std::size_t>(*d)] = true;
                }
            }
        }
        for (int q = 0; q < cfg.num_qubits(); ++q)
            if (!paired[static_cast<std::size_t>(q)])
                cz.spectators.push_back(q);
        return cz;
    }

private:
    void commit(const MoveStep& step, std::vector<MoveStep>& out) {
        if (step.moves.empty())
            return;
        if (auto violation = check_aod(step, geo_))
            throw std::logic_error("router produced an illegal move: " + *violation);
        for (const auto& m : step.moves)
            geo_.place(m.atom, m.to);
        out.push_back(step);
    }

    Geometry geo_;
};

namespace detail {
inline bool same_pairs(std::vector<CzPair> a, std::vector<CzPair> b) {
    auto key = [](const CzPair& p) { return std::pair{p.address, p.data}; };
    auto less = [&](const CzPair& l, const CzPair& r) { return key(l) < key(r); };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    return a == b;
}

// Moves the address row so the requested pairs become co-located, appends
// the moves and the pulse.
inline void emit_pulse(AddressRouter& router, Schedule& schedule, const std::vector<CzPair>& wanted) {
    const auto& cfg = schedule.config();
    if (static_cast<int>(wanted.size()) != cfg.address_qubits())
        throw std::invalid_argument("CZ layer must pair every address qubit");
    std::vector<int> columns(static_cast<std::size_t>(cfg.address_qubits()), -1);
    int row = -1;
    for (const auto& p : wanted) {
        if (!cfg.is_address(p.address) || !cfg.is_data(p.data))
            throw std::invalid_argument("CZ must act on one address and one data qubit");
        const Site d = router.geometry().site_of(p.data);
        if (row != -1 && d.row != row)
            throw std::invalid_argument("CZ layer spans several data rows");
        row = d.row;
        if (columns[static_cast<std::size_t>(p.address)] != -1)
            throw std::invalid_argument("address qubit used twice in one CZ layer");
        columns[static_cast<std::size_t>(p.address)] = d.column;
    }
    for (auto& step : router.route(columns, row))
        schedule.append(std::move(step));
    GlobalCz cz = router.pulse();
    if (!same_pairs(cz.pairs, wanted))
        throw std::logic_error("co-located pairs differ from the requested CZ layer");
    schedule.append(std::move(cz));
}
} // namespace detail

/// Moves and pulses for the pairing table, walking data rows in
/// boustrophedon order inside each Gray step.
inline Schedule schedule_moves(const QCrankConfig& cfg, const ControlSchedule& pairing) {
    const int na = cfg.address_qubits();
    if (pairing.n_address != na || pairing.steps() != cfg.num_addresses())
        throw std::invalid_argument("schedule_moves: pairing does not match configuration");
    Schedule schedule(plan_layout(cfg));
    AddressRouter router(schedule.initial_geometry());
    for (std::size_t t = 0; t < pairing.steps(); ++t) {
        if (static_cast<int>(pairing.controls[t].size()) != na)
            throw std::invalid_argument("schedule_moves: malformed pairing row");
        for (int r : row_visit_order(cfg, t)) {
            std::vector<CzPair> wanted;
            for (int p = 0; p < na; ++p)
                wanted.push_back({cfg.address_qubit(pairing.controls[t][static_cast<std::size_t>(p)]),
                                  cfg.data_qubit(r * na + p)});
            detail::emit_pulse(router, schedule, wanted);
        }
    }
    return schedule;
}

/// Lowers a build_dpqa circuit to the full instruction stream.
inline Schedule lower(const Circuit& circuit, const QCrankConfig& cfg) {
    if (circuit.n_qubits() != cfg.num_qubits())
        throw std::invalid_argument("lower: register size does not match configuration");
    Schedule schedule(plan_layout(cfg));
    AddressRouter router(schedule.initial_geometry());
    for (const auto& layer : circuit.layers()) {
        const GateKind kind = layer.front().kind;
        if (kind == GateKind::barrier)
            continue;
        if (kind == GateKind::measure_all) {
            schedule.append(MeasureAll{});
            continue;
        }
        if (kind == GateKind::cz) {
            std::vector<CzPair> wanted;
            for (const auto& g : layer) {
                if (g.kind != GateKind::cz)
                    throw std::invalid_argument("lower: mixed CZ layer");
                int a = g.qubits[0];
                int d = g.qubits[1];
                if (cfg.is_data(a))
                    std::swap(a, d);
                wanted.push_back({a, d});
            }
            detail::emit_pulse(router, schedule, wanted);
            continue;
        }
        for (const auto& g : layer)
            if (!is_single_qubit(g.kind))
                throw std::invalid_argument(std::string("lower: circuit not in DPQA form, found ") +
                                            to_string(g.kind));
        if (layer.front().scope == Scope::global) {
            schedule.append(GlobalU{kind, layer.front().angle});
        } else {
            for (const auto& g : layer)
                schedule.append(LocalU{g.qubits[0], g.kind, g.angle});
        }
    }
    return schedule;
}

} // namespace qcrank

#endif // QCRANK_DPQA_HPP
