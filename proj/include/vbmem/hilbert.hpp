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
 * @file hilbert.hpp
 * @brief Two-dimensional state algebra shared by every other module.
 *
 * A HybridState is a normalized pair of amplitudes (c0, c1). Its meaning
 * depends on the basis tag:
 *
 *   HybridPoincare: c0 -> |L, l=-1>,  c1 -> |R, l=+1>
 *   Polarization:   c0 -> |R>,        c1 -> |L>
 *
 * The two tags share coordinates on purpose: the q-plate maps one onto the
 * other without touching the amplitudes, so a density matrix reconstructed
 * after decoding is already expressed in the logical {|0>, |1>} basis.
 *
 * Bloch convention: s3 = +1 is |0>, and the other two components are the
 * expectation values of the H/V and D/A analyzer pairs,
 *
 *   s1 = 2 Re rho01,   s2 = 2 Im rho01,   s3 = rho00 - rho11.
 */

#ifndef VBMEM_HILBERT_HPP
#define VBMEM_HILBERT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "vbmem/error.hpp"

namespace vbmem {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

enum class Basis { HybridPoincare, Polarization };

constexpr const char *to_string(Basis basis) {
    return basis == Basis::HybridPoincare ? "HybridPoincare" : "Polarization";
}

class HybridState {
   public:
    /// Normalizes (c0, c1); throws ZeroVector when both vanish.
    HybridState(Complex c0, Complex c1, Basis basis) : basis_(basis) {
        const double norm = std::sqrt(std::norm(c0) + std::norm(c1));
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw Error(ErrorKind::ZeroVector, "state amplitudes must not both be zero");
        }
        c0_ = c0 / norm;
        c1_ = c1 / norm;
    }

    Complex c0() const noexcept { return c0_; }
    Complex c1() const noexcept { return c1_; }
    Basis basis() const noexcept { return basis_; }

    /// Same amplitudes reinterpreted in the other basis.
    HybridState with_basis(Basis basis) const { return HybridState(c0_, c1_, basis); }

    double norm() const noexcept { return std::sqrt(std::norm(c0_) + std::norm(c1_)); }

   private:
    Complex c0_;
    Complex c1_;
    Basis basis_;
};

inline HybridState make_state(Complex c0, Complex c1, Basis basis) { return HybridState(c0, c1, basis); }

inline Complex inner(const HybridState &a, const HybridState &b) {
    return std::conj(a.c0()) * b.c0() + std::conj(a.c1()) * b.c1();
}

/// |<a|b>|^2, ignoring the basis tag.
inline double overlap(const HybridState &a, const HybridState &b) { return std::norm(inner(a, b)); }

/// Row-major 2x2 complex matrix.
struct Matrix2 {
    std::array<Complex, 4> m{};

    Complex &operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
    Complex operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

    static Matrix2 identity() { return Matrix2{{Complex{1.0}, Complex{}, Complex{}, Complex{1.0}}}; }

    Complex trace() const { return m[0] + m[3]; }

    Matrix2 adjoint() const {
        return Matrix2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }

    friend Matrix2 operator*(const Matrix2 &a, const Matrix2 &b) {
        Matrix2 out;
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
            }
        }
        return out;
    }
    friend Matrix2 operator+(const Matrix2 &a, const Matrix2 &b) {
        Matrix2 out;
        for (std::size_t i = 0; i < 4; ++i) out.m[i] = a.m[i] + b.m[i];
        return out;
    }
    friend Matrix2 operator-(const Matrix2 &a, const Matrix2 &b) {
        Matrix2 out;
        for (std::size_t i = 0; i < 4; ++i) out.m[i] = a.m[i] - b.m[i];
        return out;
    }
    friend Matrix2 operator*(Complex s, const Matrix2 &a) {
        Matrix2 out;
        for (std::size_t i = 0; i < 4; ++i) out.m[i] = s * a.m[i];
        return out;
    }

    double max_abs_diff(const Matrix2 &other) const {
        double worst = 0.0;
        for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(m[i] - other.m[i]));
        return worst;
    }
};

inline std::array<Complex, 2> apply(const Matrix2 &u, Complex x0, Complex x1) {
    return {u(0, 0) * x0 + u(0, 1) * x1, u(1, 0) * x0 + u(1, 1) * x1};
}

/// Applies a unitary in the state's own coordinates; the basis tag is kept.
inline HybridState apply(const Matrix2 &u, const HybridState &psi) {
    const auto out = apply(u, psi.c0(), psi.c1());
    return HybridState(out[0], out[1], psi.basis());
}

namespace tolerance {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kEigenvalue = 1e-10;
inline constexpr double kBall = 1e-10;
}  // namespace tolerance

/// Eigenvalues of a Hermitian 2x2 matrix, ascending.
inline std::array<double, 2> hermitian_eigenvalues(const Matrix2 &a) {
    const double mean = 0.5 * (a(0, 0).real() + a(1, 1).real());
    const double half_gap = 0.5 * (a(0, 0).real() - a(1, 1).real());
    const double radius = std::hypot(half_gap, std::abs(a(0, 1)));
    return {mean - radius, mean + radius};
}

class DensityMatrix {
   public:
    /// Validated construction; throws NonPhysicalDensity.
    explicit DensityMatrix(const Matrix2 &elements) : elements_(elements) { validate(); }

    /// Wraps raw data without checks. Use validate() or is_physical() before
    /// trusting the result.
    static DensityMatrix unvalidated(const Matrix2 &elements) { return DensityMatrix(elements, Unchecked{}); }

    static DensityMatrix maximally_mixed() { return DensityMatrix(0.5 * Matrix2::identity()); }

    const Matrix2 &elements() const noexcept { return elements_; }
    Complex operator()(int r, int c) const { return elements_(r, c); }

    std::string violation() const {
        const Matrix2 diff = elements_ - elements_.adjoint();
        double hermitian_err = 0.0;
        for (const auto &d : diff.m) hermitian_err = std::max(hermitian_err, std::abs(d));
        if (!(hermitian_err <= tolerance::kHermitian)) return "not Hermitian";
        const Complex tr = elements_.trace();
        if (!(std::abs(tr - 1.0) <= tolerance::kTrace)) return "trace differs from 1";
        if (!(hermitian_eigenvalues(elements_)[0] >= -tolerance::kEigenvalue)) return "negative eigenvalue";
        return {};
    }

    bool is_physical() const { return violation().empty(); }

    void validate() const {
        const std::string why = violation();
        if (!why.empty()) throw Error(ErrorKind::NonPhysicalDensity, why);
    }

    /// Tr(rho^2).
    double purity() const { return (elements_ * elements_).trace().real(); }

   private:
    struct Unchecked {};
    DensityMatrix(const Matrix2 &elements, Unchecked) : elements_(elements) {}

    Matrix2 elements_;
};

struct BlochVector {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;

    double length() const { return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3); }
};

inline DensityMatrix density_from_pure(const HybridState &psi) {
    Matrix2 rho;
    rho(0, 0) = psi.c0() * std::conj(psi.c0());
    rho(0, 1) = psi.c0() * std::conj(psi.c1());
    rho(1, 0) = psi.c1() * std::conj(psi.c0());
    rho(1, 1) = psi.c1() * std::conj(psi.c1());
    return DensityMatrix::unvalidated(rho);
}

/// <psi|rho|psi>, clamped to [0, 1]. Throws NonPhysicalDensity.
inline double conditional_fidelity(const DensityMatrix &rho, const HybridState &psi) {
    rho.validate();
    const Complex a = psi.c0();
    const Complex b = psi.c1();
    const Complex value = std::conj(a) * (rho(0, 0) * a + rho(0, 1) * b) + std::conj(b) * (rho(1, 0) * a + rho(1, 1) * b);
    return std::clamp(value.real(), 0.0, 1.0);
}

inline BlochVector bloch_of(const DensityMatrix &rho) {
    const Complex off = rho(0, 1);
    return BlochVector{2.0 * off.real(), 2.0 * off.imag(), (rho(0, 0) - rho(1, 1)).real()};
}

/// (I + s.sigma)/2 with sigma_2 the D/A analyzer difference. Throws OutsideBall.
inline DensityMatrix rho_of(const BlochVector &b) {
    if (!(b.length() <= 1.0 + tolerance::kBall)) {
        throw Error(ErrorKind::OutsideBall, "Bloch vector length " + std::to_string(b.length()) + " exceeds 1");
    }
    Matrix2 rho;
    rho(0, 0) = 0.5 * (1.0 + b.s3);
    rho(1, 1) = 0.5 * (1.0 - b.s3);
    rho(0, 1) = Complex(0.5 * b.s1, 0.5 * b.s2);
    rho(1, 0) = std::conj(rho(0, 1));
    return DensityMatrix::unvalidated(rho);
}

inline BlochVector bloch_of(const HybridState &psi) { return bloch_of(density_from_pure(psi)); }

}  // namespace vbmem

#endif  // VBMEM_HILBERT_HPP
