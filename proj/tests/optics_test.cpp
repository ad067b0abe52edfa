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

#include "vbmem/optics.hpp"

#include <random>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace vbmem;
using vbmem::testing::haar_state;
using vbmem::testing::kind_of;
using vbmem::testing::same_ray;

namespace {

HybridState hybrid(Complex c0, Complex c1) { return HybridState(c0, c1, Basis::HybridPoincare); }
HybridState pol_hv(Complex h, Complex v) { return from_hv(h, v); }
constexpr double kDeg = kPi / 180.0;

}  // namespace

TEST(circular_basis, conventions) {
    const Jones r = to_hv(HybridState(1.0, 0.0, Basis::Polarization));
    EXPECT_NEAR(std::abs(r.h - kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r.v + kI * kInvSqrt2), 0.0, 1e-15);
    const HybridState h = pol_hv(1.0, 0.0);
    EXPECT_NEAR(std::abs(h.c0() - h.c1()), 0.0, 1e-15);
}

TEST(qplate_apply, paper_examples) {
    const QPlateParams p;
    const Heralded radial = qplate_apply(pol_hv(1.0, 0.0), p);
    EXPECT_EQ(radial.state.basis(), Basis::HybridPoincare);
    EXPECT_DOUBLE_EQ(radial.probability, 1.0);
    EXPECT_TRUE(same_ray(radial.state, hybrid(1.0, 1.0)));

    EXPECT_TRUE(same_ray(qplate_apply(pol_hv(0.0, 1.0), p).state, hybrid(-1.0, 1.0)));
    EXPECT_TRUE(same_ray(qplate_apply(HybridState(1.0, 0.0, Basis::Polarization), p).state, hybrid(1.0, 0.0)));
}

TEST(qplate_apply, unitary_when_tuned) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const HybridState in = haar_state(rng, Basis::Polarization);
        const QPlateFullOutput full = qplate_full_output(in, QPlateParams{});
        double norm = 0.0;
        for (const Complex &a : full.amplitudes) norm += std::norm(a);
        EXPECT_NEAR(norm, 1.0, 1e-12);
        EXPECT_NEAR(std::norm(full.amplitudes[0]) + std::norm(full.amplitudes[1]), 0.0, 1e-24);
    }
}

TEST(qplate_apply, detuned_is_heralded) {
    QPlateParams p;
    p.tuning_delta = 0.5 * kPi;
    p.conversion_efficiency = 0.8;
    EXPECT_NEAR(p.success_probability(), 0.4, 1e-12);

    const HybridState in = pol_hv(0.6, Complex(0.0, 0.8));
    const QPlateFullOutput full = qplate_full_output(in, p);
    EXPECT_NEAR(std::norm(full.amplitudes[2]) + std::norm(full.amplitudes[3]), 0.5, 1e-12);
    const Heralded out = qplate_apply(in, p);
    EXPECT_NEAR(out.probability, 0.4, 1e-12);
    EXPECT_TRUE(same_ray(out.state, qplate_apply(in, QPlateParams{}).state));
}

TEST(qplate_apply, errors) {
    const HybridState h = pol_hv(1.0, 0.0);
    for (double q : {1.0, -0.5, 1.5, 0.0}) {
        QPlateParams p;
        p.q = q;
        EXPECT_EQ(kind_of([&] { qplate_apply(h, p); }), ErrorKind::UnsupportedCharge) << q;
        EXPECT_EQ(kind_of([&] { qplate_decode(hybrid(1.0, 0.0), p); }), ErrorKind::UnsupportedCharge) << q;
    }
    QPlateParams odd;
    odd.q = 0.3;
    EXPECT_EQ(kind_of([&] { qplate_apply(h, odd); }), ErrorKind::RangeError);

    QPlateParams off;
    off.tuning_delta = 0.0;
    EXPECT_EQ(kind_of([&] { qplate_apply(h, off); }), ErrorKind::VacuumOutput);

    EXPECT_EQ(kind_of([&] { qplate_apply(hybrid(1.0, 0.0), QPlateParams{}); }), ErrorKind::DomainError);
    EXPECT_EQ(kind_of([&] { qplate_decode(h, QPlateParams{}); }), ErrorKind::DomainError);
}

TEST(qplate_decode, examples) {
    const QPlateParams p;
    EXPECT_TRUE(same_ray(qplate_decode(hybrid(1.0, 0.0), p).state, HybridState(1.0, 0.0, Basis::Polarization)));

    const HybridState d = pol_hv(kInvSqrt2, kInvSqrt2);
    const HybridState back = qplate_decode(qplate_apply(d, p).state, p).state;
    EXPECT_EQ(back.basis(), Basis::Polarization);
    EXPECT_NEAR(std::abs(back.c0() - d.c0()), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(back.c1() - d.c1()), 0.0, 1e-12);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    for (int i = 0; i < 20; ++i) {
        const double phi = u(rng);
        const HybridState out = qplate_decode(hybrid(1.0, std::polar(1.0, phi)), p).state;
        EXPECT_NEAR(std::abs(out.c0() - kInvSqrt2), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(out.c1() - kInvSqrt2 * std::polar(1.0, phi)), 0.0, 1e-12);
    }
}

TEST(qplate_decode, inverts_apply_on_haar_states) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int i = 0; i < 100; ++i) {
        QPlateParams p;
        p.alpha0 = u(rng);
        const HybridState in = haar_state(rng, Basis::Polarization);
        const HybridState out = qplate_decode(qplate_apply(in, p).state, p).state;
        EXPECT_GE(overlap(in, out), 1.0 - 1e-10);
        EXPECT_NEAR(std::abs(out.c0() - in.c0()), 0.0, 1e-12);
    }
}

TEST(qplate_apply, offset_angle_is_a_relative_phase) {
    QPlateParams p;
    p.alpha0 = 0.3;
    const HybridState out = qplate_apply(pol_hv(1.0, 0.0), p).state;
    EXPECT_NEAR(std::abs(out.c0()), kInvSqrt2, 1e-12);
    EXPECT_NEAR(std::arg(out.c1() / out.c0()), 4.0 * 0.3, 1e-12);
}

TEST(rotate_frame, examples) {
    EXPECT_TRUE(same_ray(rotate_frame(pol_hv(1.0, 0.0), 90.0 * kDeg), pol_hv(0.0, 1.0)));
    const HybridState r(1.0, 0.0, Basis::Polarization);
    EXPECT_TRUE(same_ray(rotate_frame(r, 1.234), r));
    const HybridState radial = hybrid(1.0, 1.0);
    const HybridState turned = rotate_frame(radial, 20.0 * kDeg);
    EXPECT_NEAR(std::abs(turned.c0() - radial.c0()), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(turned.c1() - radial.c1()), 0.0, 1e-15);
}

TEST(rotate_frame, linear_polarization_turns_against_the_frame) {
    for (double theta : {0.1, 0.7, 2.0}) {
        const HybridState out = rotate_frame(linear_polarization(0.25), theta);
        EXPECT_TRUE(same_ray(out, linear_polarization(0.25 - theta)));
    }
}

TEST(rotate_frame, composes_additively) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (Basis basis : {Basis::Polarization, Basis::HybridPoincare}) {
        for (int i = 0; i < 50; ++i) {
            const HybridState psi = haar_state(rng, basis);
            const double a = u(rng);
            const double b = u(rng);
            EXPECT_TRUE(same_ray(rotate_frame(rotate_frame(psi, a), b), rotate_frame(psi, a + b)));
        }
    }
}

TEST(rotate_frame, hybrid_states_are_invariant) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int i = 0; i < 200; ++i) {
        const HybridState psi = haar_state(rng, Basis::HybridPoincare);
        EXPECT_NEAR(overlap(psi, rotate_frame(psi, u(rng))), 1.0, 1e-12);
    }
}

TEST(rotate_frame, malus_law_for_linear_states) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int i = 0; i < 200; ++i) {
        const HybridState psi = linear_polarization(u(rng));
        const double theta = u(rng);
        EXPECT_NEAR(overlap(psi, rotate_frame(psi, theta)), std::pow(std::cos(theta), 2), 1e-12);
    }
}

TEST(waveplate, examples) {
    const HybridState h = pol_hv(1.0, 0.0);
    EXPECT_TRUE(same_ray(waveplate(h, WaveplateParams::half_wave(45.0 * kDeg)), pol_hv(0.0, 1.0)));
    const HybridState circ = waveplate(h, WaveplateParams::quarter_wave(45.0 * kDeg));
    EXPECT_NEAR(std::abs(bloch_of(circ).s3), 1.0, 1e-12);
    EXPECT_EQ(kind_of([&] { waveplate(hybrid(1.0, 0.0), WaveplateParams{}); }), ErrorKind::DomainError);
}

TEST(waveplate, unitary) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int i = 0; i < 50; ++i) {
        const Matrix2 m = waveplate_matrix({u(rng), u(rng)});
        EXPECT_LT((m.adjoint() * m).max_abs_diff(Matrix2::identity()), 1e-12);
    }
}

TEST(waveplate, two_half_waves_rotate_by_twice_the_gap) {
    // Two HWPs at a then b act on linear polarization as a rotation by 2(b - a).
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int i = 0; i < 10; ++i) {
        const double a = u(rng);
        const double b = u(rng);
        const Matrix2 pair = waveplate_matrix(WaveplateParams::half_wave(b)) * waveplate_matrix(WaveplateParams::half_wave(a));
        const double g = 2.0 * (b - a);
        const Matrix2 rotation{{std::cos(g), -std::sin(g), std::sin(g), std::cos(g)}};
        EXPECT_LT(std::min(pair.max_abs_diff(rotation), pair.max_abs_diff(Complex(-1.0) * rotation)), 1e-12);
        const double phi = u(rng);
        EXPECT_TRUE(same_ray(waveplate(waveplate(linear_polarization(phi), WaveplateParams::half_wave(a)),
                                       WaveplateParams::half_wave(b)),
                             linear_polarization(phi + g)));
    }
}

TEST(displacer_split, examples) {
    const DualRailState h = displacer_split(pol_hv(1.0, 0.0));
    EXPECT_NEAR(h.rail_norm(Rail::H), 1.0, 1e-15);
    EXPECT_NEAR(h.rail_norm(Rail::V), 0.0, 1e-15);
    EXPECT_EQ(h.rail_phase, 0.0);

    const DualRailState radial = displacer_split(hybrid(1.0, 1.0));
    EXPECT_NEAR(radial.rail_norm(Rail::H), kInvSqrt2, 1e-15);
    EXPECT_NEAR(radial.rail_norm(Rail::V), kInvSqrt2, 1e-15);
    EXPECT_EQ(radial.oam_labels, (std::array<int, 2>{-1, +1}));

    const DualRailState zero = displacer_split(hybrid(1.0, 0.0));
    EXPECT_NEAR(std::abs(zero.amp_H[0] - kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(zero.amp_V[0] - kI * kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(zero.amp_H[1]) + std::abs(zero.amp_V[1]), 0.0, 1e-15);
}

TEST(displacer_recombine, round_trip) {
    std::mt19937_64 rng(9);
    for (Basis basis : {Basis::Polarization, Basis::HybridPoincare}) {
        for (int i = 0; i < 50; ++i) {
            const HybridState psi = haar_state(rng, basis);
            const Recombined r = displacer_recombine(displacer_split(psi));
            EXPECT_NEAR(r.throughput, 1.0, 1e-12);
            EXPECT_NEAR(r.logical_probability, 1.0, 1e-12);
            EXPECT_EQ(r.state.basis(), basis);
            EXPECT_NEAR(std::abs(r.state.c0() - psi.c0()), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(r.state.c1() - psi.c1()), 0.0, 1e-12);
        }
    }
}

TEST(displacer_recombine, lossy_rails_report_throughput) {
    DualRailState d;
    d.amp_H = {0.6, 0.0};
    const Recombined r = displacer_recombine(d);
    EXPECT_NEAR(r.throughput, 0.36, 1e-15);
    EXPECT_TRUE(same_ray(r.state, pol_hv(1.0, 0.0)));

    EXPECT_EQ(kind_of([] { displacer_recombine(DualRailState{}); }), ErrorKind::VacuumOutput);
}

TEST(displacer_recombine, rail_phase_pi_gives_orthogonal_polarization) {
    DualRailState d = displacer_split(pol_hv(kInvSqrt2, kInvSqrt2));
    const HybridState reference = displacer_recombine(d).state;
    d.rail_phase = kPi;
    EXPECT_NEAR(overlap(displacer_recombine(d).state, reference), 0.0, 1e-12);
}

TEST(displacer_recombine, rail_phase_moves_hybrid_light_out_of_the_logical_space) {
    std::mt19937_64 rng(10);
    for (double phase : {0.3, 1.0, 2.5}) {
        const HybridState psi = haar_state(rng, Basis::HybridPoincare);
        DualRailState d = displacer_split(psi);
        d.rail_phase = phase;
        const Recombined r = displacer_recombine(d);
        EXPECT_NEAR(r.throughput, 1.0, 1e-12);
        EXPECT_NEAR(r.logical_probability, std::pow(std::cos(0.5 * phase), 2), 1e-12);
        EXPECT_TRUE(same_ray(r.state, psi));
    }
    DualRailState d = displacer_split(hybrid(1.0, 1.0));
    d.amp_V = {Complex{}, Complex{}};
    d.amp_H = {Complex{}, Complex{}};
    EXPECT_EQ(kind_of([&] { displacer_recombine(d); }), ErrorKind::VacuumOutput);
}
