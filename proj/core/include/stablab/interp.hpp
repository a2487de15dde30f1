// SPDX-License-Identifier: MIT
#pragma once

#include <array>

namespace stablab {

/// Value and first two derivatives of a scalar function at a point.
struct Jet2 {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Quintic Hermite interpolant on [x0, x0 + h] matching value, first and
/// second derivative at both ends.
inline Jet2 quintic_hermite(const Jet2& left, const Jet2& right, double h, double t) {
    const double c0 = left.value;
    const double c1 = h * left.d1;
    const double c2 = 0.5 * h * h * left.d2;
    const double r0 = right.value - (c0 + c1 + c2);
    const double r1 = h * right.d1 - (c1 + 2.0 * c2);
    const double r2 = h * h * right.d2 - 2.0 * c2;
    const double c3 = 10.0 * r0 - 4.0 * r1 + 0.5 * r2;
    const double c4 = -15.0 * r0 + 7.0 * r1 - r2;
    const double c5 = 6.0 * r0 - 3.0 * r1 + 0.5 * r2;
    Jet2 out;
    out.value = c0 + t * (c1 + t * (c2 + t * (c3 + t * (c4 + t * c5))));
    out.d1 = (c1 + t * (2.0 * c2 + t * (3.0 * c3 + t * (4.0 * c4 + t * 5.0 * c5)))) / h;
    out.d2 = (2.0 * c2 + t * (6.0 * c3 + t * (12.0 * c4 + t * 20.0 * c5))) / (h * h);
    return out;
}

}  // namespace stablab
