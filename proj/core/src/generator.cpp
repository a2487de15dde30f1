// SPDX-License-Identifier: MIT
#include "stablab/generator.hpp"

#include <cmath>
#include <vector>

namespace stablab {

QuadratureSpec default_generator_quadrature() {
    QuadratureSpec q;
    q.max_subdivisions = 4000;
    q.abs_tol = 1e-10;
    q.rel_tol = 1e-9;
    return q;
}

namespace {

double generalized_binomial(double p, int k) {
    double out = 1.0;
    for (int j = 0; j < k; ++j) out *= (p - j) / (j + 1);
    return out;
}

struct Tail {
    double value;
    double error;
    double radius;
    double max_panel;
};

// int_R^inf {f(x+y) + f(x-y) - 2 f(x)} y^{-1-alpha} dy without the c_alpha factor.
Tail far_field_tail(double alpha, const SmoothFunction& f, double x, double fx, const QuadratureSpec& spec) {
    if (const auto* g = std::get_if<PowerGrowth>(&f.far_field)) {
        if (!(g->exponent < alpha)) throw DomainError("far_field.exponent", "growth exponent must be below alpha");
        const double d = x - g->center;
        const double radius = std::max(100.0, 50.0 * (1.0 + std::abs(d)));
        double sum = 0.0, last = 0.0;
        for (int k = 0; k <= 40; k += 2) {
            const double term = 2.0 * g->coefficient * generalized_binomial(g->exponent, k) * std::pow(d, k) *
                                std::pow(radius, g->exponent - k - alpha) / (alpha + k - g->exponent);
            sum += term;
            last = std::abs(term);
            if (last < 1e-18 * std::abs(sum)) break;
        }
        sum -= 2.0 * fx * std::pow(radius, -alpha) / alpha;
        return {sum, last, radius, std::numeric_limits<double>::infinity()};
    }
    const auto& b = std::get<BoundedGrowth>(f.far_field);
    // Oscillating part bounded by 2 M R^{-alpha} / alpha.
    const double target = std::max(spec.abs_tol, 1e-12);
    double radius = std::pow(2.0 * b.sup_bound / (alpha * target), 1.0 / alpha);
    radius = std::clamp(radius, 100.0, 1e6);
    const double bound = 2.0 * b.sup_bound * std::pow(radius, -alpha) / alpha;
    return {-2.0 * fx * std::pow(radius, -alpha) / alpha, bound, radius, 2.0};
}

}  // namespace

GeneratorResult generator_apply_detailed(const StableLaw& law, const SmoothFunction& f, double x,
                                         const QuadratureSpec& spec) {
    const double alpha = law.alpha();
    const double y0 = std::min(1.0, 1e-2 * (1.0 + std::abs(x)));
    const double fx = f.value(x);
    GeneratorResult out;

    // Taylor part.
    {
        const double pow_in = (alpha - 1.0) / (2.0 - alpha);
        const double pow_s = 1.0 / (2.0 - alpha);
        const double a_coef = 1.0 / (alpha * (alpha - 1.0));
        const double scale = std::pow(y0, 2.0 - alpha) / (2.0 - alpha);
        auto integrand = [&](double v) {
            const double s = y0 * std::pow(v, pow_s);
            const double w = a_coef - std::pow(v, pow_in) / (alpha - 1.0) + std::pow(v, pow_in + pow_s) / alpha;
            return (f.second(x + s) + f.second(x - s)) * w;
        };
        const auto pts = uniform_breakpoints(0.0, 1.0, 0.125);
        const QuadResult r = integrate(integrand, std::span<const double>(pts), spec);
        if (!r.converged) throw NumericError("generator_apply: Taylor part", r.value * scale, r.abs_error * scale);
        out.value += r.value * scale;
        out.abs_error += r.abs_error * scale;
        out.evaluations += r.evaluations;
    }

    const Tail tail = far_field_tail(alpha, f, x, fx, spec);

    // Direct part on [y0, R].
    {
        std::vector<double> pts{y0};
        double edge = y0;
        while (edge < tail.radius) {
            const double next = std::min({2.0 * edge, edge + tail.max_panel, tail.radius});
            if (edge < 1.0 && next > 1.0) {
                pts.push_back(1.0);
            }
            pts.push_back(next);
            edge = next;
        }
        auto integrand = [&](double y) {
            return (f.value(x + y) + f.value(x - y) - 2.0 * fx) * std::pow(y, -1.0 - alpha);
        };
        QuadratureSpec direct = spec;
        direct.max_subdivisions = std::max(spec.max_subdivisions, static_cast<int>(pts.size()) * 4);
        const QuadResult r = integrate(integrand, std::span<const double>(pts), direct);
        if (!r.converged) throw NumericError("generator_apply: direct part", r.value, r.abs_error);
        out.value += r.value;
        out.abs_error += r.abs_error;
        out.evaluations += r.evaluations;
    }

    out.value += tail.value;
    out.abs_error += tail.error;
    out.value *= law.c_alpha();
    out.abs_error *= law.c_alpha();
    return out;
}

double generator_apply(const StableLaw& law, const SmoothFunction& f, double x) {
    return generator_apply_detailed(law, f, x).value;
}

}  // namespace stablab
