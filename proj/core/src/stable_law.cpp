// SPDX-License-Identifier: MIT
#include "stablab/stable_law.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

namespace stablab {

namespace {

constexpr double kPi = std::numbers::pi;

// e^{-t^alpha} t^k is below ~1e-18 beyond this point.
double transform_cutoff(double alpha, int power) {
    const double target = 42.0 + 2.0 * power;
    return std::pow(target, 1.0 / alpha);
}

// (1/pi) int_0^inf t^order * trig(x t) e^{-t^alpha} dt, where trig is cos for
// even order and sin for odd order, with the sign of d^order/dx^order applied.
QuadResult transform_integral(double alpha, double x, int order, const QuadratureSpec& spec) {
    const double tmax = transform_cutoff(alpha, order);
    const double width = std::min(1.0, kPi / std::max(std::abs(x), 1e-300));
    auto pts = uniform_breakpoints(0.0, tmax, width);
    auto f = [alpha, x, order](double t) {
        const double damp = std::exp(-std::pow(t, alpha));
        switch (order) {
            case 0: return std::cos(x * t) * damp;
            case 1: return -t * std::sin(x * t) * damp;
            default: return -t * t * std::cos(x * t) * damp;
        }
    };
    QuadResult r = integrate(f, std::span<const double>(pts), spec);
    r.value /= kPi;
    r.abs_error /= kPi;
    return r;
}

}  // namespace

QuadratureSpec StableLaw::default_quadrature() {
    QuadratureSpec q;
    q.max_subdivisions = 2000;
    q.abs_tol = 1e-14;
    q.rel_tol = 1e-11;
    q.oscillatory_cutoff = 40.0;
    return q;
}

StableLaw::StableLaw(double alpha, QuadratureSpec density_quadrature)
    : alpha_(alpha), quadrature_(density_quadrature) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("alpha", "must lie in the open interval (1, 2)");
    quadrature_.validate();
    const double half = alpha * kPi / 2.0;
    const double sin_half = std::sin(half);
    const double cot_half = std::cos(half) / sin_half;
    c_alpha_ = std::tgamma(alpha + 1.0) * sin_half / kPi;
    big_C_alpha_ = -2.0 * alpha * sin_half * cot_half * std::tgamma(alpha + 1.0);
    generator_mass_ = -2.0 * std::tgamma(alpha) * std::cos(half);
}

StableLaw make_stable_law(double alpha) { return StableLaw(alpha); }

double stable_density_series(double alpha, double x, int* terms_used) {
    const double ax = std::abs(x);
    if (!(ax > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double logx = std::log(ax);
    double sum = 0.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 400; ++k) {
        const double log_mag = std::lgamma(alpha * k + 1.0) - std::lgamma(k + 1.0) - (alpha * k + 1.0) * logx;
        const double mag = std::exp(log_mag);
        if (mag > prev_mag) break;  // asymptotic series started to diverge
        const double s = std::sin(k * kPi * alpha / 2.0);
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        sum += sign * s * mag;
        prev_mag = mag;
        if (terms_used) *terms_used = k;
        if (mag < 1e-17 * std::abs(sum)) return sum / kPi;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double stable_density(const StableLaw& law, double x) {
    const auto& q = law.density_quadrature();
    if (std::abs(x) > q.oscillatory_cutoff) {
        const double s = stable_density_series(law.alpha(), x);
        if (std::isfinite(s)) return s;
    }
    const QuadResult r = transform_integral(law.alpha(), x, 0, q);
    return require_converged(r, "stable_density");
}

Jet2 stable_density_jet(const StableLaw& law, double x) {
    const auto& q = law.density_quadrature();
    Jet2 out;
    out.value = require_converged(transform_integral(law.alpha(), x, 0, q), "stable_density");
    out.d1 = require_converged(transform_integral(law.alpha(), x, 1, q), "stable_density'");
    out.d2 = require_converged(transform_integral(law.alpha(), x, 2, q), "stable_density''");
    return out;
}

double stable_tail_series(double alpha, double x) {
    if (!(x > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double logx = std::log(x);
    double sum = 0.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 400; ++k) {
        const double log_mag = std::lgamma(alpha * k + 1.0) - std::lgamma(k + 1.0) - alpha * k * logx;
        const double mag = std::exp(log_mag) / (alpha * k);
        if (mag > prev_mag) break;
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        sum += sign * std::sin(k * kPi * alpha / 2.0) * mag;
        prev_mag = mag;
        if (mag < 1e-17 * std::abs(sum)) return sum / kPi;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double stable_cdf(const StableLaw& law, double x) {
    const double ax = std::abs(x);
    const double cutoff = law.density_quadrature().oscillatory_cutoff;
    double upper;  // P(Z > |x|)
    const double tail = ax >= cutoff ? stable_tail_series(law.alpha(), ax) : std::nan("");
    if (std::isfinite(tail)) {
        upper = tail;
    } else {
        auto table = density_table(law);
        QuadratureSpec q;
        q.abs_tol = 1e-15;
        q.rel_tol = 1e-13;
        q.max_subdivisions = 2000;
        auto pts = uniform_breakpoints(0.0, ax, 1.0);
        upper = 0.5 - require_converged(integrate([&](double y) { return (*table)(y); }, pts, q), "stable_cdf");
    }
    return x >= 0.0 ? 1.0 - upper : upper;
}

double density_envelope(const StableLaw& law, double x) {
    return std::pow(std::max(std::abs(x), 1.0), -1.0 - law.alpha());
}

Comparability envelope_comparability_check(const StableLaw& law, std::span<const double> grid) {
    if (grid.empty()) throw DomainError("grid", "must be non-empty");
    Comparability c{std::numeric_limits<double>::infinity(), 0.0};
    for (double y : grid) {
        const double r = stable_density(law, y) / density_envelope(law, y);
        c.c_lower = std::min(c.c_lower, r);
        c.c_upper = std::max(c.c_upper, r);
    }
    return c;
}

CertificationReport certify_density(const StableLaw& law, std::span<const double> grid) {
    if (grid.empty()) throw DomainError("grid", "must be non-empty");
    const double a = law.alpha();
    const double cutoff = law.density_quadrature().oscillatory_cutoff;
    CertificationReport rep;
    rep.subject = "stable_density";
    rep.parameters = {{"alpha", a}, {"cutoff", cutoff}};
    rep.grid = {*std::min_element(grid.begin(), grid.end()), *std::max_element(grid.begin(), grid.end()), grid.size()};

    const double R = 100.0;
    auto g = [&](double y) { return stable_density(law, y); };
    auto inner_pts = uniform_breakpoints(0.0, cutoff, 1.0);
    const double inner = require_converged(integrate(g, inner_pts, law.density_quadrature()), "normalization");
    const double outer = require_converged(integrate(g, cutoff, R, law.density_quadrature()), "normalization");
    const double mass = 2.0 * (inner + outer) + 2.0 * law.c_alpha() * std::pow(R, -a) / a;
    rep.add({"normalization", "int g = 1 (tail 2 c_alpha R^-alpha / alpha beyond R = 100)", std::abs(mass - 1.0), 1e-5,
             std::abs(mass - 1.0) <= 1e-5, "mass " + std::to_string(mass)});

    const double g0 = stable_density(law, 0.0);
    const double g0_ref = std::tgamma(1.0 + 1.0 / a) / kPi;
    rep.add({"g_at_zero", "g(0) = Gamma(1 + 1/alpha) / pi", std::abs(g0 - g0_ref), 1e-6, std::abs(g0 - g0_ref) <= 1e-6,
             ""});

    const double ratio = stable_density(law, 50.0) / (law.c_alpha() * std::pow(50.0, -1.0 - a));
    rep.add({"tail_ratio", "g(x) / (c_alpha |x|^{-1-alpha}) in [0.98, 1.02] at |x| = 50", std::abs(ratio - 1.0), 0.02,
             std::abs(ratio - 1.0) <= 0.02, "ratio " + std::to_string(ratio)});

    double asym = 0.0, min_g = std::numeric_limits<double>::infinity();
    for (double y : grid) {
        const double gp = g(y), gm = g(-y);
        asym = std::max(asym, std::abs(gp - gm) / std::max(gp, 1e-300));
        min_g = std::min(min_g, gp);
    }
    rep.add({"symmetry", "g(x) = g(-x)", asym, 1e-10, asym <= 1e-10, "max relative gap on grid"});
    rep.add({"positivity", "g(x) > 0", min_g, 0.0, min_g > 0.0, "min on grid"});

    const double below = stable_cdf(law, std::nextafter(cutoff, 0.0));
    const double above = stable_cdf(law, cutoff);
    rep.add({"cdf_continuity", "quadrature CDF meets tail series CDF at the cutoff", std::abs(above - below), 1e-8,
             std::abs(above - below) <= 1e-8, ""});

    const auto comp = envelope_comparability_check(law, grid);
    rep.add({"envelope_lower", "c_lower G <= g", comp.c_lower, 0.0, comp.c_lower > 0.0,
             "c_upper " + std::to_string(comp.c_upper)});
    return rep;
}

double sample_standard(const StableLaw& law, RngStream& stream) {
    const double a = law.alpha();
    const double u = kPi * (stream.uniform() - 0.5);
    const double w = stream.exponential();
    const double cu = std::cos(u);
    return std::sin(a * u) / std::pow(cu, 1.0 / a) * std::pow(std::cos((1.0 - a) * u) / w, (1.0 - a) / a);
}

double sample_increment(const StableLaw& law, double dt, RngStream& stream) {
    return std::pow(dt, 1.0 / law.alpha()) * sample_standard(law, stream);
}

DensityTable::DensityTable(const StableLaw& law, double spacing)
    : alpha_(law.alpha()), cutoff_(law.density_quadrature().oscillatory_cutoff), spacing_(spacing) {
    const auto n = static_cast<std::size_t>(std::ceil(cutoff_ / spacing_));
    spacing_ = cutoff_ / static_cast<double>(n);
    nodes_.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) nodes_[i] = stable_density_jet(law, spacing_ * static_cast<double>(i));
}

double DensityTable::operator()(double x) const {
    const double ax = std::abs(x);
    if (ax >= cutoff_) {
        const double s = stable_density_series(alpha_, ax);
        if (std::isfinite(s)) return s;
        return nodes_.back().value * std::pow(cutoff_ / ax, 1.0 + alpha_);
    }
    const double pos = ax / spacing_;
    auto i = static_cast<std::size_t>(pos);
    if (i >= nodes_.size() - 1) i = nodes_.size() - 2;
    return quintic_hermite(nodes_[i], nodes_[i + 1], spacing_, pos - static_cast<double>(i)).value;
}

std::shared_ptr<const DensityTable> density_table(const StableLaw& law) {
    static std::mutex mutex;
    static std::map<std::pair<double, double>, std::shared_ptr<const DensityTable>> cache;
    const std::pair<double, double> key{law.alpha(), law.density_quadrature().oscillatory_cutoff};
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto table = std::make_shared<const DensityTable>(law);
    cache.emplace(key, table);
    return table;
}

}  // namespace stablab
