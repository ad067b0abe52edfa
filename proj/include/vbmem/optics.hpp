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

/**
 * @file optics.hpp
 * @brief Jones-calculus optical elements acting on HybridState.
 *
 * Circular basis convention, fixed everywhere:
 *   |R> = (|H> - i|V>)/sqrt(2),   |L> = (|H> + i|V>)/sqrt(2).
 *
 * Frame rotation by theta (rotating the analyzer, not the beam) multiplies
 * |R> by exp(-i theta), |L> by exp(+i theta) and an OAM mode l by
 * exp(+i l theta). Under this convention both |L,-1> and |R,+1> carry zero
 * total angular momentum and are left untouched.
 */

#ifndef VBMEM_OPTICS_HPP
#define VBMEM_OPTICS_HPP

#include <array>
#include <cmath>
#include <complex>

#include "vbmem/error.hpp"
#include "vbmem/hilbert.hpp"

namespace vbmem {

/// Jones vector in the H/V basis.
struct Jones {
    Complex h;
    Complex v;

    double power() const { return std::norm(h) + std::norm(v); }
};

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

inline Jones to_hv(const HybridState &psi) {
    return Jones{kInvSqrt2 * (psi.c0() + psi.c1()), kInvSqrt2 * kI * (psi.c1() - psi.c0())};
}

/// Polarization state with the given H/V amplitudes. Throws ZeroVector.
inline HybridState from_hv(Complex h, Complex v) {
    return HybridState(kInvSqrt2 * (h + kI * v), kInvSqrt2 * (h - kI * v), Basis::Polarization);
}

inline HybridState from_hv(const Jones &j) { return from_hv(j.h, j.v); }

/// Linear polarization at angle `angle` from the horizontal.
inline HybridState linear_polarization(double angle) { return from_hv(std::cos(angle), std::sin(angle)); }

// --------------------------------------------------------------------------
// q-plate

struct QPlateParams {
    double q = 0.5;
    double alpha0 = 0.0;
    double tuning_delta = kPi;
    double conversion_efficiency = 1.0;

    bool operator==(const QPlateParams &) const = default;

    /// Throws RangeError.
    void validate() const {
        const double twice = 2.0 * q;
        if (!std::isfinite(q) || std::abs(twice - std::round(twice)) > 1e-12) {
            throw Error(ErrorKind::RangeError, "q-plate charge must be a half-integer");
        }
        if (!std::isfinite(alpha0)) throw Error(ErrorKind::RangeError, "q-plate alpha0 must be finite");
        if (!(tuning_delta >= 0.0 && tuning_delta < 2.0 * kPi)) {
            throw Error(ErrorKind::RangeError, "q-plate tuning_delta must lie in [0, 2pi)");
        }
        if (!(conversion_efficiency >= 0.0 && conversion_efficiency <= 1.0)) {
            throw Error(ErrorKind::RangeError, "q-plate conversion_efficiency must lie in [0, 1]");
        }
    }

    /// Probability that a photon is spin-orbit converted and kept.
    double success_probability() const {
        const double s = std::sin(0.5 * tuning_delta);
        return s * s * conversion_efficiency;
    }
};

/// A state that passed a heralded element, with the probability of passing.
struct Heralded {
    HybridState state;
    double probability;
};

/// Full output of one q-plate pass before the unconverted part is dropped.
/// Index 0/1: unconverted (|R,0>, |L,0>); index 2/3: converted (|L,-2q>, |R,+2q>).
struct QPlateFullOutput {
    std::array<Complex, 4> amplitudes;
};

namespace detail {

inline void require_unit_charge(const QPlateParams &p) {
    p.validate();
    if (std::abs(2.0 * p.q - 1.0) > 1e-12) {
        throw Error(ErrorKind::UnsupportedCharge, "only q = 1/2 maps onto the |L,-1>, |R,+1> logical basis");
    }
}

}  // namespace detail

/// Coherent q-plate output for a polarization input, including the
/// unconverted part. Throws UnsupportedCharge.
inline QPlateFullOutput qplate_full_output(const HybridState &psi, const QPlateParams &p) {
    detail::require_unit_charge(p);
    const double half = 0.5 * p.tuning_delta;
    const Complex keep = std::cos(half);
    const Complex flip = kI * std::sin(half);
    const Complex phase = std::polar(1.0, 2.0 * p.alpha0);
    return QPlateFullOutput{{keep * psi.c0(), keep * psi.c1(), flip * psi.c0() / phase, flip * psi.c1() * phase}};
}

/// a|R> + b|L>  ->  a|L,-1> + b|R,+1>, heralded on conversion.
/// Throws UnsupportedCharge, DomainError for a non-polarization input and
/// VacuumOutput when nothing is converted.
inline Heralded qplate_apply(const HybridState &psi, const QPlateParams &p) {
    if (psi.basis() != Basis::Polarization) {
        throw Error(ErrorKind::DomainError, "q-plate encoding expects a polarization state");
    }
    detail::require_unit_charge(p);
    const double success = p.success_probability();
    if (!(success > 0.0)) throw Error(ErrorKind::VacuumOutput, "q-plate converts no light");
    const Complex phase = std::polar(1.0, 2.0 * p.alpha0);
    return Heralded{HybridState(psi.c0() / phase, psi.c1() * phase, Basis::HybridPoincare), success};
}

/// a|L,-1> + b|R,+1>  ->  a|R> + b|L>, heralded on conversion. Inverse of
/// qplate_apply for plates with the same alpha0.
inline Heralded qplate_decode(const HybridState &psi, const QPlateParams &p) {
    if (psi.basis() != Basis::HybridPoincare) {
        throw Error(ErrorKind::DomainError, "q-plate decoding expects a hybrid state");
    }
    detail::require_unit_charge(p);
    const double success = p.success_probability();
    if (!(success > 0.0)) throw Error(ErrorKind::VacuumOutput, "q-plate converts no light");
    const Complex phase = std::polar(1.0, 2.0 * p.alpha0);
    return Heralded{HybridState(psi.c0() * phase, psi.c1() / phase, Basis::Polarization), success};
}

// --------------------------------------------------------------------------
// Frame rotation

/// Phase picked up by a component with spin s (+1 for R, -1 for L) and OAM l.
inline Complex rotation_phase(int spin, int oam, double theta) {
    return std::polar(1.0, static_cast<double>(oam - spin) * theta);
}

inline HybridState rotate_frame(const HybridState &psi, double theta) {
    if (psi.basis() == Basis::Polarization) {
        return HybridState(psi.c0() * rotation_phase(+1, 0, theta), psi.c1() * rotation_phase(-1, 0, theta), psi.basis());
    }
    return HybridState(psi.c0() * rotation_phase(-1, -1, theta), psi.c1() * rotation_phase(+1, +1, theta), psi.basis());
}

// --------------------------------------------------------------------------
// Waveplates

struct WaveplateParams {
    double retardance = kPi;
    double axis_angle = 0.0;

    static WaveplateParams half_wave(double axis) { return {kPi, axis}; }
    static WaveplateParams quarter_wave(double axis) { return {0.5 * kPi, axis}; }
};

/// Retarder Jones matrix in the H/V basis: R(a) diag(e^{-i G/2}, e^{i G/2}) R(-a).
inline Matrix2 waveplate_matrix(const WaveplateParams &w) {
    const double c = std::cos(w.axis_angle);
    const double s = std::sin(w.axis_angle);
    const Complex fast = std::polar(1.0, -0.5 * w.retardance);
    const Complex slow = std::polar(1.0, 0.5 * w.retardance);
    Matrix2 out;
    out(0, 0) = c * c * fast + s * s * slow;
    out(0, 1) = c * s * (fast - slow);
    out(1, 0) = c * s * (fast - slow);
    out(1, 1) = s * s * fast + c * c * slow;
    return out;
}

inline HybridState waveplate(const HybridState &psi, const WaveplateParams &w) {
    if (psi.basis() != Basis::Polarization) {
        throw Error(ErrorKind::DomainError, "waveplates act on polarization states");
    }
    const Jones in = to_hv(psi);
    const auto out = apply(waveplate_matrix(w), in.h, in.v);
    return from_hv(out[0], out[1]);
}

// --------------------------------------------------------------------------
// Beam displacers

enum class Rail { H = 0, V = 1 };

/// Two spatially separated rails, each holding up to two transverse modes.
/// Polarization states use one mode slot (l = 0); hybrid states use two
/// (l = -1 in slot 0, l = +1 in slot 1).
struct DualRailState {
    Basis basis = Basis::Polarization;
    int mode_count = 1;
    std::array<int, 2> oam_labels{0, 0};
    std::array<Complex, 2> amp_H{};
    std::array<Complex, 2> amp_V{};
    double rail_phase = 0.0;

    const std::array<Complex, 2> &rail(Rail r) const { return r == Rail::H ? amp_H : amp_V; }
    std::array<Complex, 2> &rail(Rail r) { return r == Rail::H ? amp_H : amp_V; }

    double rail_power(Rail r) const {
        const auto &a = rail(r);
        return std::norm(a[0]) + std::norm(a[1]);
    }
    double rail_norm(Rail r) const { return std::sqrt(rail_power(r)); }
    double total_power() const { return rail_power(Rail::H) + rail_power(Rail::V); }
};

inline DualRailState displacer_split(const HybridState &psi) {
    DualRailState d;
    d.basis = psi.basis();
    if (psi.basis() == Basis::Polarization) {
        const Jones j = to_hv(psi);
        d.mode_count = 1;
        d.oam_labels = {0, 0};
        d.amp_H = {j.h, Complex{}};
        d.amp_V = {j.v, Complex{}};
    } else {
        // c0 rides on |L> = (H + iV)/sqrt2, c1 on |R> = (H - iV)/sqrt2.
        d.mode_count = 2;
        d.oam_labels = {-1, +1};
        d.amp_H = {kInvSqrt2 * psi.c0(), kInvSqrt2 * psi.c1()};
        d.amp_V = {kInvSqrt2 * kI * psi.c0(), -kInvSqrt2 * kI * psi.c1()};
    }
    return d;
}

struct Recombined {
    HybridState state;
    /// |amp_H|^2 + |amp_V|^2 over all mode slots.
    double throughput;
    /// Part of the throughput that lands back in the logical space.
    double logical_probability;
};

/// Recombines the rails with the accumulated rail phase on the V path. For
/// hybrid states, components whose spin no longer matches their OAM (e.g.
/// |R,-1>) fall outside the logical space and are dropped; they are rejected
/// downstream by the decoding q-plate and single-mode detection.
/// Throws VacuumOutput when nothing survives.
inline Recombined displacer_recombine(const DualRailState &d) {
    const double throughput = d.total_power();
    if (!(throughput > 0.0)) throw Error(ErrorKind::VacuumOutput, "both rails are empty");
    const Complex phase = std::polar(1.0, d.rail_phase);
    auto circular = [&](std::size_t slot) {
        const Complex h = d.amp_H[slot];
        const Complex v = phase * d.amp_V[slot];
        return std::array<Complex, 2>{kInvSqrt2 * (h + kI * v), kInvSqrt2 * (h - kI * v)};  // (R, L)
    };
    Complex c0;
    Complex c1;
    if (d.basis == Basis::Polarization) {
        const auto rl = circular(0);
        c0 = rl[0];
        c1 = rl[1];
    } else {
        c0 = circular(0)[1];  // L on l = -1
        c1 = circular(1)[0];  // R on l = +1
    }
    const double logical = std::norm(c0) + std::norm(c1);
    if (!(logical > 0.0)) throw Error(ErrorKind::VacuumOutput, "no light left in the logical space");
    return Recombined{HybridState(c0, c1, d.basis), throughput, logical};
}

}  // namespace vbmem

#endif  // VBMEM_OPTICS_HPP
