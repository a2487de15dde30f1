// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <variant>

#include "stablab/quadrature.hpp"
#include "stablab/stable_law.hpp"

namespace stablab {

/// |f| <= sup_bound everywhere.
struct BoundedGrowth {
    double sup_bound = 1.0;
};

/// f(x) ~ coefficient * |x - center|^exponent for large |x|, exponent < alpha.
struct PowerGrowth {
    double coefficient = 1.0;
    double exponent = 1.0;
    double center = 0.0;
};

/// A C^2 function together with its first two derivatives and a far-field
/// description used for the analytic tail of the jump integral.
struct SmoothFunction {
    std::function<double(double)> value;
    std::function<double(double)> first;
    std::function<double(double)> second;
    std::variant<BoundedGrowth, PowerGrowth> far_field = BoundedGrowth{};
};

struct GeneratorResult {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
};

QuadratureSpec default_generator_quadrature();

/// L f(x) = int {f(x+y) - f(x) - 1_{|y|<=1} y f'(x)} c_alpha |y|^{-1-alpha} dy.
///
/// The symmetric form int_0^inf {f(x+y) + f(x-y) - 2 f(x)} c_alpha y^{-1-alpha} dy
/// is split at y0 = min(1, 0.01 (1 + |x|)):
///  * [0, y0]: exact Taylor remainder, int_0^y0 {f''(x+s) + f''(x-s)} K(s) ds with
///    K(s) = int_s^y0 (y - s) y^{-1-alpha} dy, integrated after s = y0 v^{1/(2-alpha)}
///    removes the s^{1-alpha} singularity;
///  * [y0, R]: direct adaptive quadrature on geometric panels;
///  * [R, inf): closed form from the far-field description.
/// Throws NumericError when any piece fails to converge.
GeneratorResult generator_apply_detailed(const StableLaw& law, const SmoothFunction& f, double x,
                                         const QuadratureSpec& spec = default_generator_quadrature());

double generator_apply(const StableLaw& law, const SmoothFunction& f, double x);

}  // namespace stablab
