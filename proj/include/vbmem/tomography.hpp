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
 * @file tomography.hpp
 * @brief Single-qubit state reconstruction from six-projector click counts.
 *
 * Each Stokes component is normalized by its own analyzer pair, so a drift
 * in the number of pulses sent between the sequentially acquired settings
 * does not bias the estimate. Linear inversion can leave the Bloch ball
 * under shot noise; the estimate is then pulled radially back onto the
 * sphere, which for this measurement set is the closest physical state in
 * Frobenius norm.
 */

#ifndef VBMEM_TOMOGRAPHY_HPP
#define VBMEM_TOMOGRAPHY_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "vbmem/error.hpp"
#include "vbmem/hilbert.hpp"
#include "vbmem/photodetection.hpp"

namespace vbmem {

struct StokesEstimate {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    std::uint64_t total_counts = 0;

    double length() const { return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3); }
};

/// clicks' = max(0, round(clicks - bg_clicks_expected)).
inline CountRecord background_subtract(const CountRecord &c) {
    CountRecord out = c;
    const double corrected = std::round(static_cast<double>(c.clicks) - c.bg_clicks_expected);
    out.clicks = corrected > 0.0 ? static_cast<std::uint64_t>(corrected) : 0;
    return out;
}

/// Stokes components from per-projector rates (indexed by Projector). Any
/// non-negative rates work: click frequencies, expected counts or exact
/// projection probabilities. Throws InsufficientCounts.
inline StokesEstimate stokes_from_rates(const ProjectorValues &rate) {
    auto component = [&](Projector plus) {
        const double a = rate[index_of(plus)];
        const double b = rate[index_of(partner(plus))];
        if (!(a >= 0.0 && b >= 0.0)) throw Error(ErrorKind::InsufficientCounts, "negative rate");
        if (!(a + b > 0.0)) {
            throw Error(ErrorKind::InsufficientCounts,
                        std::string("no counts in the ") + std::string(to_string(plus)) + "/" +
                            std::string(to_string(partner(plus))) + " pair");
        }
        return (a - b) / (a + b);
    };
    return StokesEstimate{component(Projector::H), component(Projector::D), component(Projector::R), 0};
}

/// Throws InsufficientCounts when a projector is missing, duplicated, or a
/// basis pair has no clicks.
inline StokesEstimate stokes_from_counts(std::span<const CountRecord> records) {
    ProjectorValues rate{};
    std::array<bool, 6> seen{};
    std::uint64_t total = 0;
    for (const CountRecord &r : records) {
        const std::size_t i = index_of(r.projector);
        if (seen[i]) throw Error(ErrorKind::InsufficientCounts, "duplicate record for projector " + std::string(to_string(r.projector)));
        if (r.trials == 0) throw Error(ErrorKind::InsufficientCounts, "record with zero trials");
        seen[i] = true;
        rate[i] = static_cast<double>(r.clicks) / static_cast<double>(r.trials);
        total += r.clicks;
    }
    for (Projector p : kProjectors) {
        if (!seen[index_of(p)]) throw Error(ErrorKind::InsufficientCounts, "missing projector " + std::string(to_string(p)));
    }
    StokesEstimate s = stokes_from_rates(rate);
    s.total_counts = total;
    return s;
}

/// Linear inversion, radially projected into the Bloch ball when needed.
inline DensityMatrix density_from_stokes(const StokesEstimate &s) {
    BlochVector b{s.s1, s.s2, s.s3};
    const double len = b.length();
    if (len > 1.0) {
        b.s1 /= len;
        b.s2 /= len;
        b.s3 /= len;
    }
    return rho_of(b);
}

struct TomographyOptions {
    bool subtract_bg = false;
};

struct TomographyResult {
    DensityMatrix rho;
    StokesEstimate stokes;

    double fidelity_vs(const HybridState &target) const { return conditional_fidelity(rho, target); }
};

inline TomographyResult tomograph(std::span<const CountRecord> records, TomographyOptions options = {}) {
    std::vector<CountRecord> used(records.begin(), records.end());
    if (options.subtract_bg) {
        for (CountRecord &r : used) r = background_subtract(r);
    }
    const StokesEstimate s = stokes_from_counts(used);
    return TomographyResult{density_from_stokes(s), s};
}

struct BootstrapSummary {
    double mean = 0.0;
    double stddev = 0.0;
    int resamples = 0;
};

/// Parametric bootstrap over the count records: each resample redraws every
/// projector's clicks from Binomial(trials, clicks / trials). Resamples that
/// leave a basis pair empty are skipped.
inline BootstrapSummary bootstrap_fidelity(std::span<const CountRecord> records, const HybridState &target,
                                           TomographyOptions options, int resamples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<CountRecord> draw(records.begin(), records.end());
    double sum = 0.0;
    double sum_sq = 0.0;
    int used = 0;
    for (int i = 0; i < resamples; ++i) {
        for (std::size_t k = 0; k < draw.size(); ++k) {
            const CountRecord &r = records[k];
            const double p = r.trials ? static_cast<double>(r.clicks) / static_cast<double>(r.trials) : 0.0;
            std::binomial_distribution<std::uint64_t> binom(r.trials, p);
            draw[k].clicks = binom(rng);
        }
        try {
            const double f = tomograph(draw, options).fidelity_vs(target);
            sum += f;
            sum_sq += f * f;
            ++used;
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::InsufficientCounts) throw;
        }
    }
    BootstrapSummary out;
    out.resamples = used;
    if (used > 0) {
        out.mean = sum / used;
        out.stddev = used > 1 ? std::sqrt(std::max(0.0, (sum_sq - used * out.mean * out.mean) / (used - 1))) : 0.0;
    }
    return out;
}

}  // namespace vbmem

#endif  // VBMEM_TOMOGRAPHY_HPP
