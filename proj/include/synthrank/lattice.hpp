// Copyright 2026 The synthrank Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

/// @file
/// Unit-cell geometry: metric tensors, volume, d-spacings, coordinate
/// transforms.

#include <array>
#include <cmath>
#include <string>

#include "synthrank/errors.hpp"

namespace synthrank {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

namespace detail {

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline double det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Mat3 inverse3(const Mat3& m) {
    double d = det3(m);
    if (d == 0.0) throw ValueError("singular 3x3 matrix");
    Mat3 inv;
    inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
    inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
    inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
    inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
    inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
    inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
    inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
    inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
    inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
    return inv;
}

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

}  // namespace detail

/// Cell parameters: lengths in Angstrom, angles in degrees.
class Lattice {
public:
    Lattice(double a, double b, double c, double alpha, double beta, double gamma)
        : a_(a), b_(b), c_(c), alpha_(alpha), beta_(beta), gamma_(gamma) {
        if (a <= 0 || b <= 0 || c <= 0)
            throw ValueError("lattice lengths must be positive");
        if (alpha <= 0 || alpha >= 180 || beta <= 0 || beta >= 180 ||
            gamma <= 0 || gamma >= 180)
            throw ValueError("lattice angles must lie in (0, 180) degrees");
        if (volume_factor() <= 0)
            throw ValueError("degenerate lattice: metric not positive definite");
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }

    /// Row-vector matrix; a along x, b in the xy plane.
    Mat3 matrix() const {
        double ca = std::cos(alpha_ * detail::kDegToRad);
        double cb = std::cos(beta_ * detail::kDegToRad);
        double cg = std::cos(gamma_ * detail::kDegToRad);
        double sg = std::sin(gamma_ * detail::kDegToRad);
        Mat3 m;
        m[0] = {a_, 0.0, 0.0};
        m[1] = {b_ * cg, b_ * sg, 0.0};
        double cx = c_ * cb;
        double cy = c_ * (ca - cb * cg) / sg;
        double cz2 = c_ * c_ - cx * cx - cy * cy;
        m[2] = {cx, cy, cz2 > 0 ? std::sqrt(cz2) : 0.0};
        return m;
    }

    /// Real-space metric tensor G_ij = v_i . v_j.
    Mat3 metric() const {
        Mat3 m = matrix();
        Mat3 g;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g[i][j] = detail::dot(m[i], m[j]);
        return g;
    }

    /// Reciprocal metric tensor, G* = G^-1.
    Mat3 reciprocal_metric() const { return detail::inverse3(metric()); }

    /// V = abc sqrt(1 - cos^2 a - cos^2 b - cos^2 g + 2 cos a cos b cos g).
    double volume() const {
        double f = volume_factor();
        if (f <= 0) throw ValueError("degenerate lattice");
        return a_ * b_ * c_ * std::sqrt(f);
    }

    Vec3 frac_to_cart(const Vec3& f) const {
        Mat3 m = matrix();
        Vec3 out = {0, 0, 0};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) out[k] += f[i] * m[i][k];
        return out;
    }

    /// Perpendicular spacing between lattice planes normal to each axis;
    /// used to size periodic image searches.
    Vec3 perpendicular_widths() const {
        Mat3 m = matrix();
        double v = std::abs(detail::det3(m));
        return {v / detail::norm(detail::cross(m[1], m[2])),
                v / detail::norm(detail::cross(m[2], m[0])),
                v / detail::norm(detail::cross(m[0], m[1]))};
    }

    friend bool operator==(const Lattice& x, const Lattice& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ &&
               x.alpha_ == y.alpha_ && x.beta_ == y.beta_ && x.gamma_ == y.gamma_;
    }

private:
    double volume_factor() const {
        double ca = std::cos(alpha_ * detail::kDegToRad);
        double cb = std::cos(beta_ * detail::kDegToRad);
        double cg = std::cos(gamma_ * detail::kDegToRad);
        return 1.0 - ca * ca - cb * cb - cg * cg + 2.0 * ca * cb * cg;
    }

    double a_, b_, c_, alpha_, beta_, gamma_;
};

/// Interplanar spacing for Miller indices (h, k, l), in Angstrom.
inline double d_spacing(const Lattice& lat, int h, int k, int l) {
    if (h == 0 && k == 0 && l == 0)
        throw ValueError("d-spacing undefined for (0,0,0)");
    Mat3 gs = lat.reciprocal_metric();
    double hkl[3] = {double(h), double(k), double(l)};
    double q = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) q += hkl[i] * gs[i][j] * hkl[j];
    return 1.0 / std::sqrt(q);
}

inline double cell_volume(const Lattice& lat) { return lat.volume(); }

}  // namespace synthrank
