// Copyright 2026 The vbmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vbmem/memory.hpp"

#include <Eigen/Dense>
#include <random>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace vbmem;
using vbmem::testing::haar_state;
using vbmem::testing::kind_of;
using vbmem::testing::same_ray;

namespace {

Recombined through_memory(const HybridState &psi, const MemoryParams &p, double t) {
    return displacer_recombine(store_retrieve(displacer_split(psi), p, t));
}

/// Fidelity after rail loss, computed in an explicit 4-dim (rail x OAM) space.
/// Columns of `to_rails` are |L,-1> and |R,+1> written in H/V components.
double rail_loss_fidelity(const HybridState &psi, double eta_h, double eta_v, double phase) {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    Eigen::Matrix<Complex, 4, 2> to_rails = Eigen::Matrix<Complex, 4, 2>::Zero();
    // Rows: (H,l=-1), (V,l=-1), (H,l=+1), (V,l=+1).
    to_rails(0, 0) = s;
    to_rails(1, 0) = i * s;
    to_rails(2, 1) = s;
    to_rails(3, 1) = -i * s;
    Eigen::Matrix<Complex, 4, 4> m = Eigen::Matrix<Complex, 4, 4>::Zero();
    m(0, 0) = m(2, 2) = std::sqrt(eta_h);
    m(1, 1) = m(3, 3) = std::sqrt(eta_v) * std::polar(1.0, phase);
    Eigen::Vector2cd in(psi.c0(), psi.c1());
    const Eigen::Vector2cd out = to_rails.adjoint() * (m * (to_rails * in));
    return std::norm(in.dot(out)) / out.squaredNorm();
}

}  // namespace

TEST(efficiency_at, examples) {
    const MemoryParams p;
    EXPECT_DOUBLE_EQ(efficiency_at(p, 0.0), 0.26);
    EXPECT_NEAR(efficiency_at(p, 7.0), 0.095648654704575, 1e-15);
    EXPECT_NEAR(efficiency_at(p, 1.0), 0.2547476552019631, 1e-15);
    EXPECT_EQ(efficiency_at(p, 1e6), 0.0);
}

TEST(efficiency_at, bounded_and_monotone) {
    MemoryParams p;
    p.eta0 = 0.8;
    p.tau = 3.0;
    double prev = efficiency_at(p, 0.0);
    for (int k = 1; k <= 200; ++k) {
        const double e = efficiency_at(p, 0.1 * k);
        EXPECT_LE(e, prev);
        EXPECT_GE(e, 0.0);
        prev = e;
    }
}

TEST(efficiency_at, errors) {
    EXPECT_EQ(kind_of([] { efficiency_at(MemoryParams{}, -1e-9); }), ErrorKind::NegativeTime);
    MemoryParams p;
    p.tau = 0.0;
    EXPECT_EQ(kind_of([&] { efficiency_at(p, 1.0); }), ErrorKind::RangeError);
    p = MemoryParams{};
    p.eta0 = 1.5;
    EXPECT_EQ(kind_of([&] { efficiency_at(p, 1.0); }), ErrorKind::RangeError);
    p = MemoryParams{};
    p.bg_click = 1.0;
    EXPECT_EQ(kind_of([&] { p.validate(); }), ErrorKind::RangeError);
}

TEST(store_retrieve, noiseless_is_identity) {
    const DualRailState in = displacer_split(HybridState(0.3, Complex(0.1, 0.9), Basis::HybridPoincare));
    const DualRailState out = store_retrieve(in, MemoryParams::noiseless(), 0.0);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_EQ(out.amp_H[k], in.amp_H[k]);
        EXPECT_EQ(out.amp_V[k], in.amp_V[k]);
    }
    EXPECT_EQ(out.oam_labels, in.oam_labels);
    EXPECT_EQ(out.rail_phase, 0.0);
}

TEST(store_retrieve, paper_efficiency_scales_rails) {
    const HybridState radial(1.0, 1.0, Basis::HybridPoincare);
    const DualRailState in = displacer_split(radial);
    const DualRailState out = store_retrieve(in, MemoryParams{}, 1.0);
    const double gain = std::sqrt(0.2547476552019631);
    EXPECT_NEAR(out.rail_norm(Rail::H), gain * in.rail_norm(Rail::H), 1e-15);
    EXPECT_NEAR(out.rail_norm(Rail::V), gain * in.rail_norm(Rail::V), 1e-15);
    const Recombined r = displacer_recombine(out);
    EXPECT_NEAR(r.throughput, 0.2547476552019631, 1e-12);
    EXPECT_TRUE(same_ray(r.state, radial));
}

TEST(store_retrieve, balanced_loss_is_state_independent) {
    std::mt19937_64 rng(21);
    const MemoryParams p;
    for (Basis basis : {Basis::Polarization, Basis::HybridPoincare}) {
        for (double t : {0.0, 1.0, 3.0, 7.0, 15.0}) {
            for (int i = 0; i < 20; ++i) {
                const HybridState psi = haar_state(rng, basis);
                const Recombined r = through_memory(psi, p, t);
                EXPECT_NEAR(overlap(r.state, psi), 1.0, 1e-12);
                EXPECT_NEAR(r.throughput, efficiency_at(p, t), 1e-12);
            }
        }
    }
}

TEST(store_retrieve, imbalance_matches_rail_loss_oracle) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        MemoryParams p;
        p.eta0 = 0.3 + 0.6 * u(rng);
        p.rail_imbalance = u(rng);
        p.rail_phase_error = 0.5 * (u(rng) - 0.5);
        const double t = 5.0 * u(rng);
        const HybridState psi = haar_state(rng, Basis::HybridPoincare);
        const RailEfficiencies eta = rail_efficiencies(p, t);
        EXPECT_NEAR(overlap(through_memory(psi, p, t).state, psi), rail_loss_fidelity(psi, eta.h, eta.v, p.rail_phase_error),
                    1e-12);
    }
}

TEST(store_retrieve, imbalance_acts_on_polarization_superpositions) {
    MemoryParams p;
    p.rail_imbalance = 0.5;
    const HybridState d = from_hv(kInvSqrt2, kInvSqrt2);
    EXPECT_LT(overlap(through_memory(d, p, 1.0).state, d), 1.0 - 1e-3);
    // Single-rail polarization states only lose intensity.
    const HybridState h = from_hv(1.0, 0.0);
    EXPECT_NEAR(overlap(through_memory(h, p, 1.0).state, h), 1.0, 1e-12);
}

TEST(store_retrieve, hybrid_states_only_lose_logical_probability_to_imbalance) {
    // Both OAM slots see the same pair of rail gains, so after dropping the
    // spin/OAM-mismatched part the logical state is unchanged.
    MemoryParams p = MemoryParams::noiseless();
    p.rail_imbalance = 0.5;
    const HybridState radial(1.0, 1.0, Basis::HybridPoincare);
    const Recombined r = through_memory(radial, p, 0.0);
    EXPECT_TRUE(same_ray(r.state, radial));
    const double expected = 0.25 * std::pow(std::sqrt(1.0) + std::sqrt(0.75), 2);
    EXPECT_NEAR(r.logical_probability, expected, 1e-12);
    EXPECT_NEAR(r.throughput, 0.875, 1e-12);
}

TEST(rail_efficiencies, clamped) {
    MemoryParams p;
    p.eta0 = 0.9;
    p.rail_imbalance = 3.0;
    const RailEfficiencies eta = rail_efficiencies(p, 0.0);
    EXPECT_EQ(eta.h, 1.0);
    EXPECT_EQ(eta.v, 0.0);
}
