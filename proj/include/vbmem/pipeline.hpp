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
 * @file pipeline.hpp
 * @brief The full storage experiment for one input state:
 *
 *   prepare -> [q-plate] -> displacer -> memory -> displacer
 *           -> rotated detection cage ([q-plate] -> analyzer) -> counts
 *           -> tomography
 *
 * States are named by their logical coordinates. Hybrid names (zero, one,
 * radial, ...) and polarization names (H, V, D, ...) share coordinates:
 * the polarization state fed to the encoding q-plate is the one with the
 * same amplitudes, so "radial" is prepared from H.
 */

#ifndef VBMEM_PIPELINE_HPP
#define VBMEM_PIPELINE_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vbmem/error.hpp"
#include "vbmem/hilbert.hpp"
#include "vbmem/memory.hpp"
#include "vbmem/optics.hpp"
#include "vbmem/photodetection.hpp"
#include "vbmem/tomography.hpp"

namespace vbmem {

enum class Encoding { Polarization, Hybrid };

constexpr std::string_view to_string(Encoding e) { return e == Encoding::Hybrid ? "hybrid" : "polarization"; }

struct NamedState {
    std::string_view name;
    Complex c0;
    Complex c1;
    std::string_view polarization_alias;
};

inline const std::array<NamedState, 12> &named_states() {
    static const std::array<NamedState, 12> table{{
        {"zero", 1.0, 0.0, "R"},
        {"one", 0.0, 1.0, "L"},
        {"radial", 1.0, 1.0, "H"},
        {"azimuthal", -1.0, 1.0, "V"},
        {"plus_i", 1.0, kI, "A"},
        {"minus_i", 1.0, -kI, "D"},
        {"H", 1.0, 1.0, "H"},
        {"V", kI, -kI, "V"},
        {"D", 1.0, -kI, "D"},
        {"A", 1.0, kI, "A"},
        {"R", 1.0, 0.0, "R"},
        {"L", 0.0, 1.0, "L"},
    }};
    return table;
}

inline const NamedState *find_named_state(std::string_view name) {
    for (const NamedState &s : named_states()) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

/// Logical state for a name. Throws DomainError for unknown names.
inline HybridState logical_state(std::string_view name, Basis basis = Basis::HybridPoincare) {
    const NamedState *s = find_named_state(name);
    if (!s) throw Error(ErrorKind::DomainError, "unknown state name '" + std::string(name) + "'");
    return HybridState(s->c0, s->c1, basis);
}

inline std::string_view polarization_alias(std::string_view name) {
    const NamedState *s = find_named_state(name);
    if (!s) throw Error(ErrorKind::DomainError, "unknown state name '" + std::string(name) + "'");
    return s->polarization_alias;
}

/// True for the four linear polarizations (or their hybrid counterparts).
inline bool is_linear(std::string_view name) {
    const std::string_view alias = polarization_alias(name);
    return alias != "R" && alias != "L";
}

inline constexpr std::array<std::string_view, 6> kHybridStateNames{"zero", "one", "radial", "azimuthal", "plus_i", "minus_i"};
inline constexpr std::array<std::string_view, 6> kPolarizationStateNames{"H", "V", "D", "A", "R", "L"};

struct ChannelSettings {
    SourceParams source;
    MemoryParams memory;
    QPlateParams qplate;
    Encoding encoding = Encoding::Hybrid;
    double storage_time_us = 1.0;
    /// Rotation of the detection cage about the beam axis, radians.
    double rotation = 0.0;
};

struct ChannelOutput {
    /// Polarization state reaching the analyzers.
    HybridState analyzed;
    /// Probability that a photon entering the encoder reaches the analyzers.
    double survival;
    ProjectorValues projection;
    ProjectorValues click;
};

inline ChannelOutput propagate(const HybridState &logical, const ChannelSettings &s) {
    s.source.validate();
    s.memory.validate();
    double survival = 1.0;

    HybridState beam = logical.with_basis(Basis::Polarization);
    if (s.encoding == Encoding::Hybrid) {
        const Heralded enc = qplate_apply(beam, s.qplate);
        beam = enc.state;
        survival *= enc.probability;
    }

    const DualRailState stored = store_retrieve(displacer_split(beam), s.memory, s.storage_time_us);
    const Recombined out = displacer_recombine(stored);
    survival *= out.logical_probability;

    HybridState analyzed = rotate_frame(out.state, s.rotation);
    if (s.encoding == Encoding::Hybrid) {
        const Heralded dec = qplate_decode(analyzed, s.qplate);
        analyzed = dec.state;
        survival *= dec.probability;
    }

    survival = std::clamp(survival, 0.0, 1.0);
    const ProjectorValues proj = projection_probabilities(analyzed);
    return ChannelOutput{analyzed, survival, proj,
                         click_probabilities(proj, s.source.nbar, survival, s.memory.bg_click)};
}

/// Tomography on expected click rates instead of sampled counts; with
/// `subtract_bg` the background probability is removed from each rate.
inline DensityMatrix expected_density(const ChannelOutput &out, double bg, bool subtract_bg) {
    ProjectorValues rate = out.click;
    if (subtract_bg) {
        for (double &r : rate) r = std::max(0.0, r - bg);
    }
    return density_from_stokes(stokes_from_rates(rate));
}

struct PointResult {
    ChannelOutput channel;
    CountSet counts;
    DensityMatrix rho_raw;
    DensityMatrix rho_corrected;
    double fidelity_raw;
    double fidelity_corrected;
    double snr;
};

/// One sampled tomography run. Throws InsufficientCounts when a basis pair
/// recorded no clicks.
inline PointResult simulate_point(const HybridState &logical, const ChannelSettings &s, std::uint64_t trials,
                                  std::uint64_t seed) {
    const ChannelOutput ch = propagate(logical, s);
    const CountSet counts = simulate_counts(ch.click, trials, seed, s.memory.bg_click);
    const TomographyResult raw = tomograph(counts, {false});
    const TomographyResult corrected = tomograph(counts, {true});
    return PointResult{ch,
                       counts,
                       raw.rho,
                       corrected.rho,
                       raw.fidelity_vs(logical),
                       corrected.fidelity_vs(logical),
                       signal_to_noise(s.source.nbar, ch.survival, s.memory.bg_click)};
}

/// Mean raw fidelity over `names` from expected rates (no shot noise).
inline double expected_mean_raw_fidelity(std::span<const std::string_view> names, const ChannelSettings &s) {
    double sum = 0.0;
    for (std::string_view name : names) {
        const HybridState psi = logical_state(name);
        sum += conditional_fidelity(expected_density(propagate(psi, s), s.memory.bg_click, false), psi);
    }
    return sum / static_cast<double>(names.size());
}

/// Background click probability at which the expected mean raw fidelity over
/// `names` equals `target`, found by bisection. Throws RangeError when the
/// target is not bracketed by bg in [0, 0.5].
inline double calibrate_background(std::span<const std::string_view> names, ChannelSettings s, double target) {
    auto fidelity_at = [&](double bg) {
        s.memory.bg_click = bg;
        return expected_mean_raw_fidelity(names, s);
    };
    double lo = 0.0;
    double hi = 0.5;
    if (!(fidelity_at(lo) >= target && fidelity_at(hi) <= target)) {
        throw Error(ErrorKind::RangeError, "raw fidelity target not reachable by background tuning");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (fidelity_at(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace vbmem

#endif  // VBMEM_PIPELINE_HPP
