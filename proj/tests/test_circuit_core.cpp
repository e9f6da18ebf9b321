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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "qcrank/angles.hpp"
#include "qcrank/builders.hpp"
#include "qcrank/circuit.hpp"
#include "qcrank/config.hpp"
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

std::vector<double> noiseless_expectations(const Circuit& c, const QCrankConfig& cfg) {
    return conditional_expectations(simulate(c).probabilities(), cfg);
}

// Direct construction of 2^{-n_a/2} sum_i |i> (x)_j (cos a_ij |0> + sin a_ij |1>).
std::vector<amplitude> reference_state(const AngleTable& angles) {
    const auto& cfg = angles.config();
    const std::size_t dim = std::size_t{1} << cfg.num_qubits();
    std::vector<amplitude> psi(dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(cfg.num_addresses()));
    for (std::size_t k = 0; k < dim; ++k) {
        const std::size_t i = k & (cfg.num_addresses() - 1);
        double a = norm;
        for (int j = 0; j < cfg.data_qubits(); ++j) {
            const bool one = k >> (cfg.address_qubits() + j) & 1u;
            a *= one ? std::sin(angles.alpha(i, j)) : std::cos(angles.alpha(i, j));
        }
        psi[k] = a;
    }
    return psi;
}

} // namespace

TEST(Config, CapacityAndDepth) {
    const QCrankConfig cfg(4, 8);
    EXPECT_EQ(cfg.capacity(), 128u);
    EXPECT_EQ(cfg.cz_depth(), 32u);
    EXPECT_EQ(cfg.num_qubits(), 12);
    EXPECT_EQ(cfg.data_rows(), 2);
    EXPECT_EQ(cfg.label(), "4+8");
    EXPECT_EQ(QCrankConfig(1, 1).capacity(), 2u);
}

TEST(Config, RejectsBadShapes) {
    EXPECT_THROW(QCrankConfig(0, 3), std::invalid_argument);
    EXPECT_THROW(QCrankConfig(3, 0), std::invalid_argument);
    EXPECT_THROW(QCrankConfig(3, 4), std::invalid_argument);
}

TEST(Circuit, LayerValidation) {
    Circuit c(3);
    EXPECT_THROW(c.add_layer({Gate::h(0), Gate::ry(0, 0.1)}), std::invalid_argument);
    EXPECT_THROW(c.add_layer({Gate::h(3)}), std::invalid_argument);
    EXPECT_THROW(c.add_layer({Gate::cz(1, 1)}), std::invalid_argument);
    EXPECT_THROW(c.add_layer({Gate::barrier(), Gate::h(0)}), std::invalid_argument);
    EXPECT_NO_THROW(c.add_layer({Gate::cz(0, 1), Gate::h(2)}));
}

TEST(Circuit, GlobalScopeOnlyForUniformFullLayers) {
    Circuit c(2);
    c.add_layer({Gate::h(0), Gate::h(1)});
    c.add_layer({Gate::h(0)});
    c.add_layer({Gate::ry(0, 0.3), Gate::ry(1, 0.3)});
    c.add_layer({Gate::ry(0, 0.3), Gate::ry(1, 0.4)});
    EXPECT_EQ(c.layers()[0][0].scope, Scope::global);
    EXPECT_EQ(c.layers()[1][0].scope, Scope::local);
    EXPECT_EQ(c.layers()[2][1].scope, Scope::global);
    EXPECT_EQ(c.layers()[3][0].scope, Scope::local);
}

TEST(Unitary, EmptyIsIdentityAndHadamard) {
    const auto id = unitary_of(Circuit(2));
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            EXPECT_EQ(id(r, c), amplitude(r == c ? 1.0 : 0.0));
    Circuit h(1);
    h.add_layer({Gate::h(0)});
    const auto u = unitary_of(h);
    const double s = 1 / std::sqrt(2.0);
    EXPECT_NEAR(u(0, 0).real(), s, 1e-15);
    EXPECT_NEAR(u(0, 1).real(), s, 1e-15);
    EXPECT_NEAR(u(1, 0).real(), s, 1e-15);
    EXPECT_NEAR(u(1, 1).real(), -s, 1e-15);
    EXPECT_THROW(unitary_of(Circuit(11)), std::invalid_argument);
}

TEST(Gray, ControlSequence) {
    EXPECT_EQ(gray_control_sequence(1), (std::vector<int>{0, 0}));
    EXPECT_EQ(gray_control_sequence(2), (std::vector<int>{0, 1, 0, 1}));
    EXPECT_EQ(gray_control_sequence(3), (std::vector<int>{0, 1, 0, 2, 0, 1, 0, 2}));
}

TEST(Gray, RelabeledSequenceForSecondRowPosition) {
    const auto s = control_schedule(QCrankConfig(2, 4));
    std::vector<int> p0;
    std::vector<int> p1;
    for (const auto& row : s.controls) {
        p0.push_back(row[0]);
        p1.push_back(row[1]);
    }
    EXPECT_EQ(p0, (std::vector<int>{0, 1, 0, 1}));
    EXPECT_EQ(p1, (std::vector<int>{1, 0, 1, 0}));
}

TEST(Gray, PerLayerControlsDistinct) {
    for (int na = 1; na <= 5; ++na) {
        const auto s = control_schedule(QCrankConfig(na, na));
        ASSERT_EQ(s.steps(), std::size_t{1} << na);
        for (const auto& row : s.controls) {
            const std::set<int> used(row.begin(), row.end());
            EXPECT_EQ(static_cast<int>(used.size()), na);
        }
    }
    for (const auto& row : control_schedule(QCrankConfig(4, 4)).controls)
        EXPECT_EQ(std::set<int>(row.begin(), row.end()), (std::set<int>{0, 1, 2, 3}));
}

TEST(Angles, TrivialAllOnes) {
    const QCrankConfig cfg(1, 1);
    const std::vector<double> data{1, 1};
    const auto a = compute_angles(data, cfg);
    for (double v : a.alpha_values())
        EXPECT_EQ(v, 0.0);
    for (double v : a.theta_values())
        EXPECT_EQ(v, 0.0);
}

TEST(Angles, ZeroDataHasOnlyUniformComponent) {
    for (auto [na, nd] : {std::pair{1, 1}, {2, 4}, {3, 6}}) {
        const QCrankConfig cfg(na, nd);
        const std::vector<double> data(cfg.capacity(), 0.0);
        const auto a = compute_angles(data, cfg);
        for (double v : a.alpha_values())
            EXPECT_NEAR(v, std::numbers::pi / 4, 1e-15);
        for (std::size_t t = 0; t < cfg.num_addresses(); ++t)
            for (int j = 0; j < nd; ++j)
                EXPECT_NEAR(a.theta(t, j), t == 0 ? std::numbers::pi / 2 : 0.0, 1e-14);
    }
}

TEST(Angles, AlphaRangeAndInverseTransform) {
    for (const auto& shape : sweep_shapes) {
        const QCrankConfig cfg(shape[0], shape[1]);
        const auto a = compute_angles(uniform_data(cfg, 11), cfg);
        for (double v : a.alpha_values()) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, std::numbers::pi / 2);
        }
        const auto back = alpha_from_theta(a.theta_values(), cfg);
        for (std::size_t k = 0; k < back.size(); ++k)
            EXPECT_NEAR(back[k], a.alpha_values()[k], 1e-12);
    }
}

TEST(Angles, ExtremeValuesNeedNoSpecialCase) {
    const QCrankConfig cfg(2, 2);
    const std::vector<double> data{1, -1, -1, 1, 1, 1, -1, -1};
    const auto got = noiseless_expectations(build_dpqa(cfg, compute_angles(data, cfg)), cfg);
    for (std::size_t k = 0; k < data.size(); ++k)
        EXPECT_NEAR(got[k], data[k], 1e-12);
}

TEST(Angles, RejectsBadInput) {
    const QCrankConfig cfg(2, 2);
    EXPECT_THROW(compute_angles(std::vector<double>(7, 0.0), cfg), std::invalid_argument);
    std::vector<double> data(8, 0.0);
    data[3] = 1.0000001;
    EXPECT_THROW(compute_angles(data, cfg), std::invalid_argument);
}

TEST(Fwht, SelfInverseUpToScale) {
    std::vector<double> v{0.3, -1.2, 2.0, 0.5, 0.0, 1.0, -0.7, 0.25};
    const auto orig = v;
    fwht(v);
    fwht(v);
    for (std::size_t k = 0; k < v.size(); ++k)
        EXPECT_NEAR(v[k] / 8, orig[k], 1e-15);
    std::vector<double> bad(6);
    EXPECT_THROW(fwht(bad), std::invalid_argument);
}

TEST(Builders, OriginalMatchesDirectStateConstruction) {
    const QCrankConfig cfg(2, 4);
    const auto angles = compute_angles(uniform_data(cfg, 5), cfg);
    const auto psi = simulate(build_original(cfg, angles));
    const auto ref = reference_state(angles);
    amplitude overlap{0, 0};
    for (std::size_t k = 0; k < ref.size(); ++k)
        overlap += std::conj(ref[k]) * psi[k];
    EXPECT_NEAR(std::abs(overlap), 1.0, 1e-12);
}

TEST(Builders, RoundTripDecodesData) {
    for (auto [na, nd] : {std::pair{1, 1}, {2, 4}, {3, 3}, {3, 6}}) {
        const QCrankConfig cfg(na, nd);
        const auto data = uniform_data(cfg, 17);
        const auto angles = compute_angles(data, cfg);
        for (const auto& circuit : {build_original(cfg, angles), build_dpqa(cfg, angles)}) {
            const auto got = noiseless_expectations(circuit, cfg);
            for (std::size_t k = 0; k < data.size(); ++k)
                EXPECT_NEAR(got[k], data[k], 1e-9) << cfg.label() << " entry " << k;
        }
    }
}

TEST(Builders, OriginalShapes) {
    auto check = [](int na, int nd, std::size_t gates, std::size_t depth) {
        const QCrankConfig cfg(na, nd);
        const auto c = build_original(cfg, compute_angles(std::vector<double>(cfg.capacity(), 0.2), cfg));
        EXPECT_EQ(c.n_qubits(), na + nd);
        EXPECT_EQ(c.count(GateKind::cx), gates);
        EXPECT_EQ(c.two_qubit_depth(), depth);
    };
    check(2, 4, 16, 8);
    check(1, 1, 2, 2);
    check(4, 8, 128, 32);
}

TEST(Builders, DpqaShapes) {
    auto check = [](int na, int nd, std::size_t layers) {
        const QCrankConfig cfg(na, nd);
        const auto c = build_dpqa(cfg, compute_angles(std::vector<double>(cfg.capacity(), -0.4), cfg));
        EXPECT_EQ(c.two_qubit_depth(), layers);
        EXPECT_EQ(c.count(GateKind::cx), 0u);
        std::size_t global_layers = 0;
        for (const auto& layer : c.layers()) {
            const bool has_cz = std::any_of(layer.begin(), layer.end(), [](const Gate& g) { return g.kind == GateKind::cz; });
            if (has_cz) {
                EXPECT_EQ(static_cast<int>(layer.size()), na);
            }
            for (const auto& g : layer) {
                EXPECT_TRUE(g.kind == GateKind::ry || g.kind == GateKind::h || g.kind == GateKind::cz ||
                            g.kind == GateKind::barrier || g.kind == GateKind::measure_all);
            }
            if (is_single_qubit(layer.front().kind) && layer.front().scope == Scope::global)
                ++global_layers;
        }
        EXPECT_EQ(global_layers, 1u);
        EXPECT_EQ(c.layers().front().front().kind, GateKind::h);
        EXPECT_EQ(c.layers().front().front().scope, Scope::global);
    };
    check(2, 4, 8);
    check(4, 8, 32);
}

TEST(Builders, CzCountEqualsCapacity) {
    const std::size_t expected[] = {24, 48, 72, 96, 128, 160, 192, 256, 320};
    for (std::size_t k = 0; k < std::size(sweep_shapes); ++k) {
        const QCrankConfig cfg(sweep_shapes[k][0], sweep_shapes[k][1]);
        const auto c = build_dpqa(cfg, compute_angles(std::vector<double>(cfg.capacity(), 0.0), cfg));
        EXPECT_EQ(c.count(GateKind::cz), expected[k]);
        EXPECT_EQ(cfg.capacity(), expected[k]);
    }
}

TEST(Builders, UnitarilyEqual) {
    for (auto [na, nd] : {std::pair{2, 4}, {3, 3}, {1, 1}}) {
        const QCrankConfig cfg(na, nd);
        const auto angles = compute_angles(uniform_data(cfg, 23), cfg);
        const auto a = unitary_of(build_original(cfg, angles));
        const auto b = unitary_of(build_dpqa(cfg, angles));
        double worst = 0;
        for (std::size_t r = 0; r < a.dim(); ++r)
            for (std::size_t c = 0; c < a.dim(); ++c)
                worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
        EXPECT_LT(worst, 1e-12) << cfg.label();
    }
}

TEST(Builders, AddressZAtAnyBarrierIsInvisible) {
    const QCrankConfig cfg(2, 4);
    const auto angles = compute_angles(uniform_data(cfg, 29), cfg);
    const Circuit base = build_dpqa(cfg, angles);
    const auto reference = simulate(base).probabilities();
    for (std::size_t pos = 0; pos < base.layers().size(); ++pos) {
        if (base.layers()[pos].front().kind != GateKind::barrier)
            continue;
        for (int b = 0; b < cfg.address_qubits(); ++b) {
            Circuit c = base;
            c.insert_layer(pos + 1, {Gate::z(cfg.address_qubit(b))});
            EXPECT_EQ(simulate(c).probabilities(), reference) << "barrier layer " << pos << " address " << b;
        }
    }
}

TEST(Builders, RejectsMismatchedAngles) {
    const QCrankConfig cfg(2, 4);
    const auto angles = compute_angles(std::vector<double>(16, 0.0), cfg);
    EXPECT_THROW(build_dpqa(QCrankConfig(2, 2), angles), std::invalid_argument);
    EXPECT_THROW(build_original(QCrankConfig(4, 4), angles), std::invalid_argument);
}
