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

#include <map>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "qcrank/angles.hpp"
#include "qcrank/builders.hpp"
#include "qcrank/dpqa.hpp"
#include "qcrank/noise.hpp"
#include "qcrank/rng.hpp"
#include "qcrank/simulator.hpp"
#include "qcrank/statevector.hpp"

using namespace qcrank;

namespace {

constexpr int sweep_shapes[][2] = {{3, 3}, {3, 6}, {3, 9}, {3, 12}, {4, 8}, {5, 5}, {4, 12}, {4, 16}, {5, 10}};

std::vector<double> uniform_data(const QCrankConfig& cfg, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> v(cfg.capacity());
    for (auto& x : v)
        x = rng.uniform(-1, 1);
    return v;
}

Schedule moves_for(const QCrankConfig& cfg) { return schedule_moves(cfg, control_schedule(cfg)); }

// Independent replay: positions as (x, y) pairs, every step checked for
// stale sources, order inversions and collisions after the step.
struct Replay {
    std::vector<std::pair<int, int>> pos;
    std::vector<int> touches;
    std::string error;
};

Replay replay(const Schedule& s) {
    Replay r;
    for (const auto& site : s.initial_geometry().sites())
        r.pos.emplace_back(site.x(), site.y());
    r.touches.assign(r.pos.size(), 0);
    for (const auto& inst : s.instructions()) {
        const auto* step = std::get_if<MoveStep>(&inst);
        if (!step)
            continue;
        for (const auto& m : step->moves) {
            if (r.pos[static_cast<std::size_t>(m.atom)] != std::pair{m.from.x(), m.from.y()})
                r.error = "stale source";
            ++r.touches[static_cast<std::size_t>(m.atom)];
        }
        for (const auto& a : step->moves)
            for (const auto& b : step->moves) {
                const bool x_ok = (a.from.x() < b.from.x()) == (a.to.x() < b.to.x()) &&
                                  (a.from.x() == b.from.x()) == (a.to.x() == b.to.x());
                const bool y_ok = (a.from.y() < b.from.y()) == (a.to.y() < b.to.y()) &&
                                  (a.from.y() == b.from.y()) == (a.to.y() == b.to.y());
                if (!x_ok || !y_ok)
                    r.error = "order inversion";
            }
        for (const auto& m : step->moves)
            r.pos[static_cast<std::size_t>(m.atom)] = {m.to.x(), m.to.y()};
        if (std::set(r.pos.begin(), r.pos.end()).size() != r.pos.size())
            r.error = "collision";
    }
    return r;
}

std::vector<const GlobalCz*> pulses(const Schedule& s) {
    std::vector<const GlobalCz*> out;
    for (const auto& inst : s.instructions())
        if (const auto* cz = std::get_if<GlobalCz>(&inst))
            out.push_back(cz);
    return out;
}

// Move steps sitting between pulse k - 1 and pulse k.
std::vector<const MoveStep*> moves_before_pulse(const Schedule& s, std::size_t k) {
    std::vector<const MoveStep*> current;
    std::size_t seen = 0;
    for (const auto& inst : s.instructions()) {
        if (const auto* m = std::get_if<MoveStep>(&inst)) {
            current.push_back(m);
        } else if (std::holds_alternative<GlobalCz>(inst)) {
            if (seen++ == k)
                return current;
            current.clear();
        }
    }
    return {};
}

} // namespace

TEST(Layout, Shapes) {
    for (auto [na, nd] : {std::pair{4, 8}, {3, 3}, {1, 1}}) {
        const Geometry g = plan_layout(QCrankConfig(na, nd));
        EXPECT_EQ(g.columns(), na);
        EXPECT_EQ(g.data_rows(), nd / na);
        EXPECT_EQ(static_cast<int>(g.sites().size()), na + nd);
        for (int j = 0; j < nd; ++j) {
            const Site s = g.site_of(na + j);
            EXPECT_EQ(s.column, j % na);
            EXPECT_EQ(s.row, j / na);
            EXPECT_EQ(s.slot, Slot::data);
        }
        for (int b = 0; b < na; ++b)
            EXPECT_EQ(g.site_of(b), (Site{b, 0, Slot::address}));
    }
}

TEST(Layout, RejectsSharedSites) {
    const QCrankConfig cfg(1, 1);
    EXPECT_THROW(Geometry(cfg, {{0, 0, Slot::data}, {0, 0, Slot::data}}), std::invalid_argument);
}

TEST(CheckAod, SingleMoveToFreeSite) {
    const Geometry g = plan_layout(QCrankConfig(2, 2));
    MoveStep s{{{0, {0, 0, Slot::address}, {-1, 0, Slot::address}}}};
    EXPECT_FALSE(check_aod(s, g).has_value());
}

TEST(CheckAod, ExchangeIsViolation) {
    const Geometry g = plan_layout(QCrankConfig(2, 2));
    MoveStep s{{{0, {0, 0, Slot::address}, {1, 0, Slot::address}}, {1, {1, 0, Slot::address}, {0, 0, Slot::address}}}};
    EXPECT_TRUE(check_aod(s, g).has_value());
}

TEST(CheckAod, StationaryOccupantAndStaleSource) {
    const Geometry g = plan_layout(QCrankConfig(2, 2));
    MoveStep onto{{{0, {0, 0, Slot::address}, {1, 0, Slot::address}}}};
    EXPECT_TRUE(check_aod(onto, g).has_value());
    MoveStep stale{{{0, {5, 0, Slot::address}, {6, 0, Slot::address}}}};
    EXPECT_TRUE(check_aod(stale, g).has_value());
    MoveStep twice{{{0, {0, 0, Slot::address}, {-1, 0, Slot::address}}, {0, {0, 0, Slot::address}, {-2, 0, Slot::address}}}};
    EXPECT_TRUE(check_aod(twice, g).has_value());
}

TEST(CheckAod, SameDestinationIsViolation) {
    const Geometry g = plan_layout(QCrankConfig(2, 2));
    // Vertical order is preserved but both land on one site.
    MoveStep s{{{0, {0, 0, Slot::address}, {-1, 0, Slot::address}}, {2, {0, 0, Slot::data}, {-1, 0, Slot::address}}}};
    EXPECT_TRUE(check_aod(s, g).has_value());
}

TEST(Router, ShiftByOneTouchesFiveAtoms) {
    const QCrankConfig cfg(4, 4);
    AddressRouter router(plan_layout(cfg));
    const auto steps = router.route({3, 0, 1, 2}, 0);
    ASSERT_EQ(steps.size(), 2u);
    EXPECT_EQ(steps[0].moves.size(), 4u);
    EXPECT_EQ(steps[1].moves.size(), 1u);
}

TEST(Router, RejectsNonCyclicTargets) {
    AddressRouter router(plan_layout(QCrankConfig(3, 3)));
    EXPECT_THROW(router.route({1, 0, 2}, 0), std::invalid_argument);
    EXPECT_THROW(router.route({0, 1, 2}, 1), std::invalid_argument);
}

TEST(Schedule, FourPlusEightSegmentPairing) {
    const QCrankConfig cfg(4, 8);
    const Schedule s = moves_for(cfg);
    const auto ps = pulses(s);
    ASSERT_EQ(ps.size(), 32u);
    // Gray step 3 starts on the lower row, then the address row climbs.
    EXPECT_EQ(ps[6]->pairs, (std::vector<CzPair>{{2, 8}, {3, 9}, {0, 10}, {1, 11}}));
    EXPECT_EQ(ps[7]->pairs, (std::vector<CzPair>{{2, 4}, {3, 5}, {0, 6}, {1, 7}}));
    const auto before6 = moves_before_pulse(s, 6);
    ASSERT_EQ(before6.size(), 2u);
    for (const auto* m : before6)
        for (const auto& mv : m->moves)
            EXPECT_EQ(mv.from.row, mv.to.row);
    EXPECT_LT(before6[0]->moves.front().to.column, before6[0]->moves.front().from.column);
    const auto before7 = moves_before_pulse(s, 7);
    ASSERT_EQ(before7.size(), 1u);
    EXPECT_EQ(before7[0]->moves.size(), 4u);
    for (const auto& mv : before7[0]->moves) {
        EXPECT_EQ(mv.from.column, mv.to.column);
        EXPECT_EQ(mv.to.row, mv.from.row - 1);
    }
}

TEST(Schedule, SingleRowHasNoVerticalMoves) {
    const Schedule s = moves_for(QCrankConfig(3, 3));
    for (const auto& inst : s.instructions()) {
        if (const auto* m = std::get_if<MoveStep>(&inst)) {
            for (const auto& mv : m->moves)
                EXPECT_EQ(mv.from.row, mv.to.row);
        }
    }
}

TEST(Schedule, ReplayOracleForAllSweepShapes) {
    for (const auto& shape : sweep_shapes) {
        const QCrankConfig cfg(shape[0], shape[1]);
        const Schedule s = moves_for(cfg);
        const Replay r = replay(s);
        EXPECT_TRUE(r.error.empty()) << cfg.label() << ": " << r.error;
        EXPECT_EQ(r.touches, s.touch_counts()) << cfg.label();
        EXPECT_EQ(r.touches, move_touch_counts(s)) << cfg.label();
        for (int q = cfg.address_qubits(); q < cfg.num_qubits(); ++q)
            EXPECT_EQ(r.touches[static_cast<std::size_t>(q)], 0) << cfg.label();

        Geometry g = s.initial_geometry();
        for (const auto& inst : s.instructions()) {
            if (const auto* m = std::get_if<MoveStep>(&inst)) {
                EXPECT_FALSE(check_aod(*m, g).has_value()) << cfg.label();
                for (const auto& mv : m->moves)
                    g.place(mv.atom, mv.to);
            }
        }
    }
}

TEST(Schedule, PulseCompletenessAndSpectators) {
    for (const auto& shape : sweep_shapes) {
        const QCrankConfig cfg(shape[0], shape[1]);
        const auto pairing = control_schedule(cfg);
        const Schedule s = schedule_moves(cfg, pairing);
        std::set<std::tuple<int, int, std::size_t>> expected;
        for (std::size_t t = 0; t < pairing.steps(); ++t)
            for (int j = 0; j < cfg.data_qubits(); ++j)
                expected.insert({pairing.controls[t][static_cast<std::size_t>(j % cfg.address_qubits())],
                                 cfg.data_qubit(j), t});
        std::multiset<std::tuple<int, int, std::size_t>> got;
        const auto ps = pulses(s);
        ASSERT_EQ(ps.size(), cfg.cz_depth());
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const std::size_t t = k / static_cast<std::size_t>(cfg.data_rows());
            for (const auto& p : ps[k]->pairs)
                got.insert({p.address, p.data, t});
            EXPECT_EQ(static_cast<int>(ps[k]->pairs.size()), cfg.address_qubits());
            EXPECT_EQ(static_cast<int>(ps[k]->spectators.size()), cfg.data_qubits() - cfg.address_qubits());
            EXPECT_EQ(2 * ps[k]->pairs.size() + ps[k]->spectators.size(), static_cast<std::size_t>(cfg.num_qubits()));
        }
        EXPECT_EQ(got.size(), cfg.capacity());
        EXPECT_EQ(std::set(got.begin(), got.end()), expected) << cfg.label();
    }
}

TEST(Schedule, HorizontalStepEconomy) {
    for (const auto& shape : sweep_shapes) {
        const QCrankConfig cfg(shape[0], shape[1]);
        const int na = cfg.address_qubits();
        const Schedule s = moves_for(cfg);
        Geometry g = s.initial_geometry();
        std::vector<const MoveStep*> horizontal;
        for (const auto& inst : s.instructions()) {
            if (const auto* m = std::get_if<MoveStep>(&inst)) {
                if (m->moves.front().from.row == m->moves.front().to.row)
                    horizontal.push_back(m);
                for (const auto& mv : m->moves)
                    g.place(mv.atom, mv.to);
            } else if (std::holds_alternative<GlobalCz>(inst)) {
                EXPECT_LE(horizontal.size(), 2u);
                if (!horizontal.empty()) {
                    int direct = 0;
                    for (const auto& mv : horizontal.front()->moves)
                        direct += mv.to.column == g.site_of(mv.atom).column;
                    EXPECT_GE(direct, (na + 1) / 2) << cfg.label();
                }
                horizontal.clear();
            }
        }
    }
}

TEST(Schedule, EmptyScheduleHasNoTouches) {
    const Schedule s(plan_layout(QCrankConfig(3, 6)));
    EXPECT_EQ(move_touch_counts(s), std::vector<int>(9, 0));
}

TEST(Lower, PulseCounts) {
    {
        const QCrankConfig cfg(2, 4);
        const Schedule s = lower(build_dpqa(cfg, compute_angles(uniform_data(cfg, 3), cfg)), cfg);
        EXPECT_EQ(s.count_pulses(), 8u);
    }
    const QCrankConfig cfg(4, 8);
    const Schedule s = lower(build_dpqa(cfg, compute_angles(uniform_data(cfg, 3), cfg)), cfg);
    for (const auto* p : pulses(s)) {
        EXPECT_EQ(p->pairs.size(), 4u);
        EXPECT_EQ(p->spectators.size(), 4u);
    }
    EXPECT_TRUE(std::holds_alternative<GlobalU>(s.instructions().front()));
    EXPECT_TRUE(std::holds_alternative<MeasureAll>(s.instructions().back()));
}

TEST(Lower, ReproducesCircuitDistributionBitExactly) {
    for (auto [na, nd] : {std::pair{2, 4}, {3, 3}, {3, 6}}) {
        const QCrankConfig cfg(na, nd);
        const Circuit c = build_dpqa(cfg, compute_angles(uniform_data(cfg, 41), cfg));
        const Schedule s = lower(c, cfg);
        StateVector psi(cfg.num_qubits());
        for (const auto& inst : s.instructions())
            detail::apply_instruction(psi, inst);
        EXPECT_EQ(psi.probabilities(), simulate(c).probabilities()) << cfg.label();
    }
}

TEST(Lower, RejectsNonNativeCircuits) {
    const QCrankConfig cfg(2, 4);
    const auto angles = compute_angles(uniform_data(cfg, 3), cfg);
    EXPECT_THROW(lower(build_original(cfg, angles), cfg), std::invalid_argument);
    EXPECT_THROW(lower(build_dpqa(cfg, angles), QCrankConfig(2, 2)), std::invalid_argument);
    Circuit wrong_row(cfg.num_qubits());
    wrong_row.add_layer({Gate::cz(0, 2), Gate::cz(1, 4)});
    EXPECT_THROW(lower(wrong_row, cfg), std::invalid_argument);
}
