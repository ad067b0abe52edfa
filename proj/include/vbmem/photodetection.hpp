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
 * @file photodetection.hpp
 * @brief Click statistics of weak coherent pulses behind a six-setting
 *        polarization analyzer and a threshold (non number-resolving) detector.
 */

#ifndef VBMEM_PHOTODETECTION_HPP
#define VBMEM_PHOTODETECTION_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "vbmem/error.hpp"
#include "vbmem/hilbert.hpp"
#include "vbmem/optics.hpp"

namespace vbmem {

struct SourceParams {
    double nbar = 0.5;

    bool operator==(const SourceParams &) const = default;

    void validate() const {
        if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw Error(ErrorKind::RangeError, "source nbar must be >= 0");
    }
};

enum class Projector { H = 0, V, D, A, R, L };

inline constexpr std::array<Projector, 6> kProjectors{Projector::H, Projector::V, Projector::D,
                                                      Projector::A, Projector::R, Projector::L};

constexpr std::string_view to_string(Projector p) {
    constexpr std::array<std::string_view, 6> names{"H", "V", "D", "A", "R", "L"};
    return names[static_cast<std::size_t>(p)];
}

inline std::optional<Projector> projector_from_string(std::string_view name) {
    for (Projector p : kProjectors) {
        if (to_string(p) == name) return p;
    }
    return std::nullopt;
}

constexpr std::size_t index_of(Projector p) { return static_cast<std::size_t>(p); }

/// The projector orthogonal to `p` in the same analyzer pair.
constexpr Projector partner(Projector p) {
    constexpr std::array<Projector, 6> partners{Projector::V, Projector::H, Projector::A,
                                                Projector::D, Projector::L, Projector::R};
    return partners[index_of(p)];
}

/// Polarization eigenstate selected by an analyzer setting.
inline HybridState analyzer_state(Projector p) {
    switch (p) {
        case Projector::H: return from_hv(1.0, 0.0);
        case Projector::V: return from_hv(0.0, 1.0);
        case Projector::D: return from_hv(kInvSqrt2, kInvSqrt2);
        case Projector::A: return from_hv(kInvSqrt2, -kInvSqrt2);
        case Projector::R: return HybridState(1.0, 0.0, Basis::Polarization);
        case Projector::L: return HybridState(0.0, 1.0, Basis::Polarization);
    }
    throw Error(ErrorKind::DomainError, "unknown projector");
}

/// Indexed by Projector.
using ProjectorValues = std::array<double, 6>;

inline ProjectorValues projection_probabilities(const HybridState &psi) {
    ProjectorValues out{};
    for (Projector p : kProjectors) out[index_of(p)] = std::clamp(overlap(analyzer_state(p), psi), 0.0, 1.0);
    return out;
}

/// 1 - (1 - bg) exp(-nbar * survival * proj_prob). Throws RangeError.
inline double click_probability(double nbar, double survival, double proj_prob, double bg) {
    if (!(nbar >= 0.0) || std::isnan(nbar)) throw Error(ErrorKind::RangeError, "nbar must be >= 0");
    if (!(survival >= 0.0 && survival <= 1.0)) throw Error(ErrorKind::RangeError, "survival must lie in [0, 1]");
    if (!(proj_prob >= 0.0 && proj_prob <= 1.0)) throw Error(ErrorKind::RangeError, "proj_prob must lie in [0, 1]");
    if (!(bg >= 0.0 && bg < 1.0)) throw Error(ErrorKind::RangeError, "bg must lie in [0, 1)");
    const double mean = nbar * survival * proj_prob;
    return bg - (1.0 - bg) * std::expm1(-mean);
}

inline ProjectorValues click_probabilities(const ProjectorValues &proj, double nbar, double survival, double bg) {
    ProjectorValues out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = click_probability(nbar, survival, proj[i], bg);
    return out;
}

/// (p_signal - bg) / bg at the maximal projector (proj_prob = 1).
inline double signal_to_noise(double nbar, double survival, double bg) {
    if (!(bg > 0.0)) return std::numeric_limits<double>::infinity();
    return (click_probability(nbar, survival, 1.0, bg) - bg) / bg;
}

/// Background probability that yields the requested SNR; inverse of
/// signal_to_noise in bg.
inline double background_for_snr(double nbar, double survival, double snr) {
    if (!(snr > 0.0)) throw Error(ErrorKind::RangeError, "snr must be positive");
    const double signal = -std::expm1(-nbar * survival);
    return signal / (snr + signal);
}

struct CountRecord {
    Projector projector = Projector::H;
    std::uint64_t clicks = 0;
    std::uint64_t trials = 1;
    double bg_clicks_expected = 0.0;
};

using CountSet = std::array<CountRecord, 6>;

/// Binomial click counts for each projector, drawn in H, V, D, A, R, L order
/// from a generator seeded with `seed`.
inline CountSet simulate_counts(const ProjectorValues &click_probs, std::uint64_t trials, std::uint64_t seed,
                                double bg_click = 0.0) {
    if (trials < 1) throw Error(ErrorKind::RangeError, "trials must be >= 1");
    std::mt19937_64 rng(seed);
    CountSet out{};
    for (Projector p : kProjectors) {
        const double prob = click_probs[index_of(p)];
        if (!(prob >= 0.0 && prob <= 1.0)) throw Error(ErrorKind::RangeError, "click probability outside [0, 1]");
        std::binomial_distribution<std::uint64_t> draw(trials, prob);
        out[index_of(p)] = CountRecord{p, draw(rng), trials, bg_click * static_cast<double>(trials)};
    }
    return out;
}

}  // namespace vbmem

#endif  // VBMEM_PHOTODETECTION_HPP
