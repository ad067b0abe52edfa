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

#ifndef VBMEM_MEMORY_HPP
#define VBMEM_MEMORY_HPP

#include <algorithm>
#include <cmath>

#include "vbmem/error.hpp"
#include "vbmem/optics.hpp"

namespace vbmem {

/// Phenomenological dual-rail memory. Times are in microseconds.
struct MemoryParams {
    double eta0 = 0.26;
    double tau = 7.0;
    /// Background click probability per detection window, applied at the
    /// detectors rather than to the stored state.
    double bg_click = 0.0;
    double rail_imbalance = 0.0;
    double rail_phase_error = 0.0;

    bool operator==(const MemoryParams &) const = default;

    /// Throws RangeError.
    void validate() const {
        if (!(eta0 >= 0.0 && eta0 <= 1.0)) throw Error(ErrorKind::RangeError, "memory eta0 must lie in [0, 1]");
        if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorKind::RangeError, "memory tau must be positive");
        if (!(bg_click >= 0.0 && bg_click < 1.0)) throw Error(ErrorKind::RangeError, "memory bg_click must lie in [0, 1)");
        if (!(rail_imbalance >= 0.0) || !std::isfinite(rail_imbalance)) {
            throw Error(ErrorKind::RangeError, "memory rail_imbalance must be non-negative");
        }
        if (!std::isfinite(rail_phase_error)) throw Error(ErrorKind::RangeError, "memory rail_phase_error must be finite");
    }

    static MemoryParams noiseless() { return MemoryParams{1.0, 7.0, 0.0, 0.0, 0.0}; }
};

/// Gaussian motional-dephasing envelope eta0 * exp(-t^2 / tau^2).
inline double efficiency_at(const MemoryParams &p, double t_us) {
    if (t_us < 0.0) throw Error(ErrorKind::NegativeTime, "storage time must be non-negative");
    p.validate();
    const double x = t_us / p.tau;
    return p.eta0 * std::exp(-x * x);
}

struct RailEfficiencies {
    double h;
    double v;
};

inline RailEfficiencies rail_efficiencies(const MemoryParams &p, double t_us) {
    const double eta = efficiency_at(p, t_us);
    return RailEfficiencies{std::clamp(eta * (1.0 + 0.5 * p.rail_imbalance), 0.0, 1.0),
                            std::clamp(eta * (1.0 - 0.5 * p.rail_imbalance), 0.0, 1.0)};
}

/// Stores and retrieves both rails after `t_us`. OAM content is carried
/// through unchanged.
inline DualRailState store_retrieve(const DualRailState &d, const MemoryParams &p, double t_us) {
    const RailEfficiencies eta = rail_efficiencies(p, t_us);
    const double gain_h = std::sqrt(eta.h);
    const double gain_v = std::sqrt(eta.v);
    DualRailState out = d;
    for (std::size_t k = 0; k < 2; ++k) {
        out.amp_H[k] *= gain_h;
        out.amp_V[k] *= gain_v;
    }
    out.rail_phase += p.rail_phase_error;
    return out;
}

}  // namespace vbmem

#endif  // VBMEM_MEMORY_HPP
