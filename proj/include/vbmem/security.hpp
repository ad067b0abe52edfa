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
 * @file security.hpp
 * @brief Fidelity benchmarks a classical (measure and re-prepare) memory
 *        can reach, and the BB84 security threshold.
 *
 * An N-photon input lets a classical memory reach (N+1)/(N+2). For a weak
 * coherent input the bound is the Poisson average over non-vacuum pulses.
 * A classical memory may also fake a finite efficiency eta: it answers only
 * for the largest photon numbers, discarding the rest, until its output
 * probability drops to eta * (1 - P(0)). Because (N+1)/(N+2) grows with N,
 * keeping the top of the distribution (with a fractional acceptance at the
 * boundary photon number) is optimal.
 */

#ifndef VBMEM_SECURITY_HPP
#define VBMEM_SECURITY_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "vbmem/error.hpp"

namespace vbmem {

inline constexpr double kShorPreskillThreshold = 0.89;

struct BenchmarkInput {
    double nbar = 0.5;
    double eta = 1.0;
};

inline double classical_bound_nphoton(std::int64_t n) {
    if (n < 1) throw Error(ErrorKind::DomainError, "photon number must be >= 1");
    return static_cast<double>(n + 1) / static_cast<double>(n + 2);
}

/// e^{-nbar} nbar^N / N!, evaluated in log space.
inline double poisson_probability(double nbar, std::int64_t n) {
    if (n < 0) return 0.0;
    if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
    const double dn = static_cast<double>(n);
    return std::exp(-nbar + dn * std::log(nbar) - std::lgamma(dn + 1.0));
}

namespace detail {

/// P(N) for N = 1.. until the remaining tail is below `tail_limit` (absolute).
/// Successive ratios P(N+1)/P(N) = nbar/(N+1) shrink, so once N+1 > nbar the
/// tail past N is at most P(N) q / (1 - q) with q = nbar / (N + 1).
inline std::vector<double> poisson_terms(double nbar, double tail_limit) {
    std::vector<double> terms{0.0};  // index 0 unused
    for (std::int64_t n = 1;; ++n) {
        const double p = poisson_probability(nbar, n);
        terms.push_back(p);
        const double q = nbar / static_cast<double>(n + 1);
        if (q < 1.0 && p * q / (1.0 - q) < tail_limit) break;
    }
    return terms;
}

}  // namespace detail

/// Sum_{N>=1} (N+1)/(N+2) P(nbar, N) / (1 - P(nbar, 0)). Throws DomainError.
inline double classical_bound_poisson(double nbar) {
    if (!(nbar > 0.0) || !std::isfinite(nbar)) throw Error(ErrorKind::DomainError, "nbar must be > 0");
    const double non_vacuum = -std::expm1(-nbar);
    const std::vector<double> p = detail::poisson_terms(nbar, 1e-14 * non_vacuum);
    double sum = 0.0;
    for (std::size_t n = p.size() - 1; n >= 1; --n) {
        sum += classical_bound_nphoton(static_cast<std::int64_t>(n)) * p[n];
    }
    return sum / non_vacuum;
}

struct EfficiencyBound {
    double value = 0.0;
    /// Lowest photon number that is (partially) accepted.
    std::int64_t threshold = 1;
    /// Fraction of pulses with exactly `threshold` photons that are accepted.
    double boundary_fraction = 1.0;
    /// False when the requested output probability exceeds what the
    /// non-vacuum pulses can supply; `value` is then the eta = 1 bound.
    bool feasible = true;
};

/// Throws DomainError for nbar <= 0 or eta <= 0.
inline EfficiencyBound classical_bound_with_efficiency_detailed(const BenchmarkInput &b) {
    if (!(b.nbar > 0.0) || !std::isfinite(b.nbar)) throw Error(ErrorKind::DomainError, "nbar must be > 0");
    if (!(b.eta > 0.0) || !std::isfinite(b.eta)) throw Error(ErrorKind::DomainError, "eta must be > 0");
    if (b.eta >= 1.0) {
        return EfficiencyBound{classical_bound_poisson(b.nbar), 1, 1.0, b.eta == 1.0};
    }
    const double non_vacuum = -std::expm1(-b.nbar);
    const double target = b.eta * non_vacuum;
    const std::vector<double> p = detail::poisson_terms(b.nbar, 1e-15 * target);

    double accepted = 0.0;
    double weighted = 0.0;
    for (std::size_t n = p.size() - 1; n >= 1; --n) {
        const double fidelity = classical_bound_nphoton(static_cast<std::int64_t>(n));
        if (accepted + p[n] < target) {
            accepted += p[n];
            weighted += fidelity * p[n];
            continue;
        }
        const double fraction = (target - accepted) / p[n];
        weighted += fidelity * fraction * p[n];
        return EfficiencyBound{weighted / target, static_cast<std::int64_t>(n), fraction, true};
    }
    // Rounding left the target just above the summed mass: everything accepted.
    return EfficiencyBound{classical_bound_poisson(b.nbar), 1, 1.0, true};
}

inline double classical_bound_with_efficiency(const BenchmarkInput &b) {
    return classical_bound_with_efficiency_detailed(b).value;
}

/// Strictly above the 0.89 threshold. Throws RangeError outside [0, 1].
inline bool shor_preskill_pass(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw Error(ErrorKind::RangeError, "fidelity must lie in [0, 1]");
    return fidelity > kShorPreskillThreshold;
}

}  // namespace vbmem

#endif  // VBMEM_SECURITY_HPP
