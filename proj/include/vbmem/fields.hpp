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
 * @file fields.hpp
 * @brief Transverse profiles at the waist plane: Laguerre-Gauss modes,
 *        vector-beam polarization maps and analyzer-projected intensities.
 *
 * Lengths are in units of the beam waist w0. Pixel centers sit at
 * x_i = -extent + (i + 1/2) * 2 extent / nx, so the sampling is symmetric
 * about the axis and a square grid maps onto itself under 90 degree turns.
 * Storage is row-major with row 0 at y = -extent; pixmap writers flip rows
 * so images come out with +y up.
 */

#ifndef VBMEM_FIELDS_HPP
#define VBMEM_FIELDS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <vector>

#include "vbmem/error.hpp"
#include "vbmem/hilbert.hpp"
#include "vbmem/optics.hpp"

namespace vbmem {

inline constexpr int kMaxOam = 50;

struct Grid {
    int nx = 256;
    int ny = 256;
    double extent = 3.0;

    bool operator==(const Grid &) const = default;

    void validate() const {
        if (nx < 2 || ny < 2) throw Error(ErrorKind::RangeError, "grid needs at least 2x2 pixels");
        if (!(extent > 0.0) || !std::isfinite(extent)) throw Error(ErrorKind::RangeError, "grid extent must be positive");
    }

    double pitch_x() const { return 2.0 * extent / nx; }
    double pitch_y() const { return 2.0 * extent / ny; }
    double pixel_area() const { return pitch_x() * pitch_y(); }
    double x_of(int ix) const { return -extent + (ix + 0.5) * pitch_x(); }
    double y_of(int iy) const { return -extent + (iy + 0.5) * pitch_y(); }
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(ix);
    }
};

struct ComplexField {
    Grid grid;
    std::vector<Complex> values;

    Complex at(int ix, int iy) const { return values[grid.index(ix, iy)]; }
};

struct RealField {
    Grid grid;
    std::vector<double> values;

    double at(int ix, int iy) const { return values[grid.index(ix, iy)]; }
    double max() const { return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end()); }
    double total_power() const {
        double sum = 0.0;
        for (double v : values) sum += v;
        return sum * grid.pixel_area();
    }
};

struct VectorFieldMap {
    Grid grid;
    double waist = 1.0;
    std::vector<Jones> field;

    const Jones &at(int ix, int iy) const { return field[grid.index(ix, iy)]; }
    double total_power() const {
        double sum = 0.0;
        for (const Jones &j : field) sum += j.power();
        return sum * grid.pixel_area();
    }
};

namespace detail {

inline void require_charge(int l) {
    if (std::abs(l) > kMaxOam) throw Error(ErrorKind::ChargeOutOfRange, "|l| must not exceed 50");
}

/// LG_{0,l} at the waist with w0 = 1, continuum-normalized.
inline Complex lg_value(int l, double x, double y) {
    const int m = std::abs(l);
    const double r2 = x * x + y * y;
    const double norm = std::sqrt(2.0 / (kPi * std::tgamma(m + 1.0)));
    const double radial = m == 0 ? 1.0 : std::pow(2.0 * r2, 0.5 * m);
    return std::polar(norm * radial * std::exp(-r2), l * std::atan2(y, x));
}

inline const Jones kLeft{kInvSqrt2, kInvSqrt2 *kI};
inline const Jones kRight{kInvSqrt2, -kInvSqrt2 *kI};

}  // namespace detail

/// LG_{0,l} sampled on `grid`, normalized to unit power on the grid.
/// Throws ChargeOutOfRange.
inline ComplexField lg_amplitude(int l, const Grid &grid) {
    detail::require_charge(l);
    grid.validate();
    ComplexField out{grid, std::vector<Complex>(grid.size())};
    double power = 0.0;
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            const Complex u = detail::lg_value(l, grid.x_of(ix), grid.y_of(iy));
            out.values[grid.index(ix, iy)] = u;
            power += std::norm(u);
        }
    }
    const double scale = 1.0 / std::sqrt(power * grid.pixel_area());
    for (Complex &u : out.values) u *= scale;
    return out;
}

/// Local Jones vector of a state at (x, y), continuum-normalized. Hybrid
/// states combine c0 LG_{-1} e_L + c1 LG_{+1} e_R; polarization states ride
/// on a Gaussian.
inline Jones field_at(const HybridState &psi, double x, double y) {
    if (psi.basis() == Basis::Polarization) {
        const Complex g = detail::lg_value(0, x, y);
        const Jones j = to_hv(psi);
        return Jones{g * j.h, g * j.v};
    }
    const Complex a = psi.c0() * detail::lg_value(-1, x, y);
    const Complex b = psi.c1() * detail::lg_value(+1, x, y);
    return Jones{a * detail::kLeft.h + b * detail::kRight.h, a * detail::kLeft.v + b * detail::kRight.v};
}

inline VectorFieldMap vector_field_map(const HybridState &psi, const Grid &grid) {
    grid.validate();
    VectorFieldMap out{grid, 1.0, std::vector<Jones>(grid.size())};
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            out.field[grid.index(ix, iy)] = field_at(psi, grid.x_of(ix), grid.y_of(iy));
        }
    }
    const double scale = 1.0 / std::sqrt(out.total_power());
    for (Jones &j : out.field) {
        j.h *= scale;
        j.v *= scale;
    }
    return out;
}

/// Per-pixel |<analyzer|E>|^2; the analyzer is normalized here.
inline RealField project_polarization(const VectorFieldMap &m, const Jones &analyzer) {
    const double n = std::sqrt(analyzer.power());
    if (!(n > 0.0)) throw Error(ErrorKind::ZeroVector, "analyzer must be non-zero");
    const Complex ah = std::conj(analyzer.h) / n;
    const Complex av = std::conj(analyzer.v) / n;
    RealField out{m.grid, std::vector<double>(m.field.size())};
    for (std::size_t i = 0; i < m.field.size(); ++i) out.values[i] = std::norm(ah * m.field[i].h + av * m.field[i].v);
    return out;
}

inline RealField intensity(const VectorFieldMap &m) {
    RealField out{m.grid, std::vector<double>(m.field.size())};
    for (std::size_t i = 0; i < m.field.size(); ++i) out.values[i] = m.field[i].power();
    return out;
}

inline RealField intensity(const ComplexField &f) {
    RealField out{f.grid, std::vector<double>(f.values.size())};
    for (std::size_t i = 0; i < f.values.size(); ++i) out.values[i] = std::norm(f.values[i]);
    return out;
}

/// Orientation of the polarization ellipse's major axis, in (-pi/2, pi/2].
inline double polarization_azimuth(const Jones &j) {
    const double s1 = std::norm(j.h) - std::norm(j.v);
    const double s2 = 2.0 * (std::conj(j.h) * j.v).real();
    return 0.5 * std::atan2(s2, s1);
}

/// Radius of the brightest pixel.
inline double peak_radius(const RealField &f) {
    const auto it = std::max_element(f.values.begin(), f.values.end());
    const auto k = static_cast<std::size_t>(it - f.values.begin());
    const int ix = static_cast<int>(k % static_cast<std::size_t>(f.grid.nx));
    const int iy = static_cast<int>(k / static_cast<std::size_t>(f.grid.nx));
    return std::hypot(f.grid.x_of(ix), f.grid.y_of(iy));
}

// --------------------------------------------------------------------------
// Pixmaps (plain-text netpbm)

/// P2 graymap scaled so the brightest pixel maps to 255.
inline void write_pgm(std::ostream &os, const RealField &f) {
    const double peak = f.max();
    os << "P2\n" << f.grid.nx << ' ' << f.grid.ny << "\n255\n";
    for (int iy = f.grid.ny - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < f.grid.nx; ++ix) {
            const double v = peak > 0.0 ? f.at(ix, iy) / peak : 0.0;
            os << static_cast<int>(std::lround(255.0 * std::clamp(v, 0.0, 1.0))) << (ix + 1 < f.grid.nx ? ' ' : '\n');
        }
    }
}

namespace detail {

inline std::array<int, 3> hsv_to_rgb(double hue, double value) {
    const double h6 = 6.0 * (hue - std::floor(hue));
    const int sector = static_cast<int>(h6) % 6;
    const double frac = h6 - std::floor(h6);
    const double rise = value * frac;
    const double fall = value * (1.0 - frac);
    double r = 0.0, g = 0.0, b = 0.0;
    switch (sector) {
        case 0: r = value, g = rise; break;
        case 1: r = fall, g = value; break;
        case 2: g = value, b = rise; break;
        case 3: g = fall, b = value; break;
        case 4: r = rise, b = value; break;
        default: r = value, b = fall; break;
    }
    auto byte = [](double c) { return static_cast<int>(std::lround(255.0 * std::clamp(c, 0.0, 1.0))); };
    return {byte(r), byte(g), byte(b)};
}

}  // namespace detail

/// P3 pixmap: hue encodes the polarization azimuth (a full color turn per
/// pi), brightness the local intensity.
inline void write_ppm(std::ostream &os, const VectorFieldMap &m) {
    const RealField inten = intensity(m);
    const double peak = inten.max();
    os << "P3\n" << m.grid.nx << ' ' << m.grid.ny << "\n255\n";
    for (int iy = m.grid.ny - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < m.grid.nx; ++ix) {
            const double hue = polarization_azimuth(m.at(ix, iy)) / kPi + 0.5;
            const double value = peak > 0.0 ? inten.at(ix, iy) / peak : 0.0;
            const auto rgb = detail::hsv_to_rgb(hue, value);
            os << rgb[0] << ' ' << rgb[1] << ' ' << rgb[2] << (ix + 1 < m.grid.nx ? ' ' : '\n');
        }
    }
}

}  // namespace vbmem

#endif  // VBMEM_FIELDS_HPP
