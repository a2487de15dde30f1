// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "stablab/error.hpp"

namespace stablab {

struct QuadratureSpec {
    int max_subdivisions = 400;
    double abs_tol = 1e-13;
    double rel_tol = 1e-10;
    /// |x| beyond which the stable density switches from the cosine transform
    /// to its large-|x| series.
    double oscillatory_cutoff = 40.0;

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
    int subdivisions = 0;
    bool converged = true;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule; nodes on [0,1] of the
// symmetric rule, Gauss nodes are the odd entries.
struct Gk21 {
    static const std::array<double, 11>& nodes();
    static const std::array<double, 11>& kronrod_weights();
    static const std::array<double, 5>& gauss_weights();
};

struct Panel {
    double a, b, value, error, magnitude;
};

template <class F>
Panel gk21_panel(F& f, double a, double b) {
    const auto& x = Gk21::nodes();
    const auto& wk = Gk21::kronrod_weights();
    const auto& wg = Gk21::gauss_weights();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::array<double, 21> fv{};
    fv[0] = f(c);
    for (int i = 1; i < 11; ++i) {
        fv[2 * i - 1] = f(c - h * x[i]);
        fv[2 * i] = f(c + h * x[i]);
    }
    double resk = wk[0] * fv[0];
    double resg = 0.0;
    double resabs = wk[0] * std::abs(fv[0]);
    for (int i = 1; i < 11; ++i) {
        const double s = fv[2 * i - 1] + fv[2 * i];
        resk += wk[i] * s;
        resabs += wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
        if (i % 2 == 1) resg += wg[i / 2] * s;
    }
    const double mean = 0.5 * resk;
    double resasc = wk[0] * std::abs(fv[0] - mean);
    for (int i = 1; i < 11; ++i)
        resasc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
    const double ah = std::abs(h);
    resabs *= ah;
    resasc *= ah;
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, resk * h, err, resabs};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (21 point) quadrature over consecutive
/// segments [points[i], points[i+1]]. Never throws; check `converged`.
template <class F>
QuadResult integrate(F&& f, std::span<const double> points, const QuadratureSpec& spec) {
    QuadResult out;
    if (points.size() < 2) return out;
    std::vector<detail::Panel> heap;
    heap.reserve(points.size() + static_cast<std::size_t>(spec.max_subdivisions) + 1);
    auto by_error = [](const detail::Panel& l, const detail::Panel& r) { return l.error < r.error; };
    double total = 0.0, total_err = 0.0, total_mag = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i + 1] == points[i]) continue;
        heap.push_back(detail::gk21_panel(f, points[i], points[i + 1]));
        out.evaluations += 21;
        total += heap.back().value;
        total_err += heap.back().error;
        total_mag += heap.back().magnitude;
    }
    std::make_heap(heap.begin(), heap.end(), by_error);
    // The floor on the magnitude term stops refinement once the error estimate
    // is at the roundoff level of int |f|, which matters for cancelling integrands.
    auto tolerance = [&] {
        constexpr double floor = 100.0 * std::numeric_limits<double>::epsilon();
        return std::max({spec.abs_tol, spec.rel_tol * std::abs(total), floor * total_mag});
    };
    while (!heap.empty() && total_err > tolerance()) {
        if (out.subdivisions >= spec.max_subdivisions) {
            out.converged = false;
            break;
        }
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const detail::Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
            // Panel too narrow to split further in double precision.
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), by_error);
            out.converged = false;
            break;
        }
        const auto left = detail::gk21_panel(f, worst.a, mid);
        const auto right = detail::gk21_panel(f, mid, worst.b);
        out.evaluations += 42;
        ++out.subdivisions;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_mag += left.magnitude + right.magnitude - worst.magnitude;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_error);
    }
    // Re-sum to shed accumulated roundoff from the running updates.
    std::sort(heap.begin(), heap.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
    total = 0.0;
    total_err = 0.0;
    total_mag = 0.0;
    for (const auto& p : heap) {
        total += p.value;
        total_err += p.error;
        total_mag += p.magnitude;
    }
    out.value = total;
    out.abs_error = total_err;
    if (total_err > tolerance()) out.converged = false;
    return out;
}

template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
    const std::array<double, 2> pts{a, b};
    return integrate(std::forward<F>(f), std::span<const double>(pts), spec);
}

/// Throws NumericError when the result did not converge.
inline double require_converged(const QuadResult& r, const std::string& what) {
    if (!r.converged) throw NumericError(what + ": quadrature did not converge", r.value, r.abs_error);
    return r.value;
}

/// Breakpoints a = p0 < p1 < ... with p_{i+1} - p_i <= max_width.
std::vector<double> uniform_breakpoints(double a, double b, double max_width);

}  // namespace stablab
