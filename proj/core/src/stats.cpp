// SPDX-License-Identifier: MIT
#include "stablab/stats.hpp"

#include <cmath>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "stablab/error.hpp"

namespace stablab {

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

MeanEstimate mean_estimate(std::span<const double> v) {
    MeanEstimate m;
    m.count = v.size();
    if (v.empty()) {
        m.mean = std::nan("");
        m.std_error = std::nan("");
        return m;
    }
    m.mean = pairwise_sum(v) / static_cast<double>(v.size());
    if (v.size() < 2) {
        m.std_error = std::nan("");
        return m;
    }
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - m.mean) * (v[i] - m.mean);
    const double var = pairwise_sum(sq) / static_cast<double>(v.size() - 1);
    m.std_error = std::sqrt(var / static_cast<double>(v.size()));
    return m;
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

LinearFit ols_fit(std::span<const double> x, std::span<const double> y, double level) {
    if (x.size() != y.size()) throw DomainError("y", "x and y must have equal length");
    if (x.size() < 2) throw DomainError("x", "need at least two points for a fit");
    const std::size_t n = x.size();
    const double mx = pairwise_sum(x) / static_cast<double>(n);
    const double my = pairwise_sum(y) / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("x", "x values must not all coincide");
    LinearFit f;
    f.n = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        sse += r * r;
    }
    f.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    if (n > 2) {
        f.slope_se = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
        boost::math::students_t dist(static_cast<double>(n - 2));
        const double tq = boost::math::quantile(dist, 0.5 + 0.5 * level);
        f.slope_ci = {f.slope - tq * f.slope_se, f.slope + tq * f.slope_se};
    } else {
        f.slope_se = 0.0;
        f.slope_ci = {f.slope, f.slope};
    }
    return f;
}

PathLadder path_ladder(std::span<const double> v, std::size_t n_min, double z_step, double slope_tol) {
    if (n_min < 2) throw DomainError("n_min", "need at least two values per rung");
    PathLadder out;
    std::vector<double> lx, ly;
    for (std::size_t n = n_min; n <= v.size(); n *= 2) {
        LadderRung r;
        r.n = n;
        r.estimate = mean_estimate(v.first(n));
        if (!out.rungs.empty()) {
            r.step = std::abs(r.estimate.mean - out.rungs.back().estimate.mean);
            r.stable = r.step <= z_step * r.estimate.std_error;
        }
        out.rungs.push_back(r);
        lx.push_back(std::log(static_cast<double>(n)));
        ly.push_back(std::log(r.estimate.std_error));
    }
    if (out.rungs.size() < 3) throw DomainError("n_min", "path ladder needs at least three rungs");
    out.cauchy = true;
    for (const auto& r : out.rungs) out.cauchy = out.cauchy && r.stable;
    out.se_fit = ols_fit(lx, ly);
    out.rate = std::abs(out.se_fit.slope + 0.5) <= slope_tol;
    out.passed = out.cauchy && out.rate;
    return out;
}

}  // namespace stablab
