// SPDX-License-Identifier: MIT
#include "stablab/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace stablab {

namespace {

constexpr int kMoments = 13;
constexpr double kFarFactor = 50.0;

QuadratureSpec conv_spec() {
    QuadratureSpec q;
    q.max_subdivisions = 3000;
    q.abs_tol = 1e-300;
    q.rel_tol = 1e-12;
    return q;
}

// Generalized binomial coefficient binom(a, k) for real a.
double binom(double a, int k) {
    double r = 1.0;
    for (int j = 0; j < k; ++j) r *= (a - j) / (j + 1);
    return r;
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

Jet2 smooth_step(double t) {
    if (t <= 0.0) return {0.0, 0.0, 0.0};
    if (t >= 1.0) return {1.0, 0.0, 0.0};
    const double u = 1.0 - t;
    const double g = 1.0 / t - 1.0 / u;
    const double g1 = -1.0 / (t * t) - 1.0 / (u * u);
    const double g2 = 2.0 / (t * t * t) - 2.0 / (u * u * u);
    const double q = std::exp(-std::abs(g));
    const double s = g > 0.0 ? q / (1.0 + q) : 1.0 / (1.0 + q);
    const double ss = q / ((1.0 + q) * (1.0 + q));  // S (1 - S)
    const double d1 = -ss * g1;
    const double d2 = -d1 * (1.0 - 2.0 * s) * g1 - ss * g2;
    return {s, d1, d2};
}

Mollifier::Mollifier(double alpha, double eps, double delta)
    : alpha_(alpha), eps_(eps), delta_(delta), log_delta_(0.0), conv_quadrature_(conv_spec()) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("alpha", "alpha must lie in (1, 2)");
    if (!(eps >= 1e-6) || !std::isfinite(eps)) throw DomainError("eps", "eps must be >= 1e-6 and finite");
    if (!(delta > 1.0) || !std::isfinite(delta)) throw DomainError("delta", "delta must be > 1 and finite");
    log_delta_ = std::log(delta);

    QuadratureSpec q;
    q.abs_tol = 1e-15;
    q.rel_tol = 1e-14;
    double last_n = std::numeric_limits<double>::quiet_NaN();
    for (double rho = 0.2; rho >= 1e-4; rho *= 0.5) {
        if (!((1.0 + rho) / (1.0 - rho) < delta)) continue;
        // Mass of w/(x log delta): plateau in closed form, transitions after
        // x = a(1 + rho t) and x = b(1 - rho t).
        auto left = integrate([&](double t) { return smooth_step(t).value / (1.0 + rho * t); }, 0.0, 1.0, q);
        auto right = integrate([&](double t) { return smooth_step(t).value / (1.0 - rho * t); }, 0.0, 1.0, q);
        const double plateau = std::log(delta * (1.0 - rho) / (1.0 + rho));
        const double mass = (plateau + rho * (require_converged(left, "mollifier mass") +
                                              require_converged(right, "mollifier mass"))) /
                            log_delta_;
        last_n = 1.0 / mass;
        if (last_n <= 2.0) {
            rho_ = rho;
            normalizer_ = last_n;
            return;
        }
    }
    std::string why = std::isnan(last_n) ? "no rho in [1e-4, 0.2] keeps (1+rho)/(1-rho) < delta"
                                         : "normalizer " + fmt_double(last_n) +
                                               " exceeds the cap psi <= 2/(x log delta) for every rho";
    throw DomainError("mollifier", why);
}

std::array<double, 4> Mollifier::breakpoints() const {
    const double a = support_lo(), b = support_hi();
    return {a, a * (1.0 + rho_), b * (1.0 - rho_), b};
}

Jet2 Mollifier::psi_jet(double x) const {
    const double a = support_lo(), b = support_hi();
    if (!(x > a && x < b)) return {0.0, 0.0, 0.0};
    Jet2 w{1.0, 0.0, 0.0};
    if (x < a * (1.0 + rho_)) {
        const double s = a * rho_;
        const Jet2 st = smooth_step((x - a) / s);
        w = {st.value, st.d1 / s, st.d2 / (s * s)};
    } else if (x > b * (1.0 - rho_)) {
        const double s = b * rho_;
        const Jet2 st = smooth_step((b - x) / s);
        w = {st.value, -st.d1 / s, st.d2 / (s * s)};
    }
    const double c = normalizer_ / log_delta_;
    const double h = c / x;
    const double h1 = -c / (x * x);
    const double h2 = 2.0 * c / (x * x * x);
    return {w.value * h, w.d1 * h + w.value * h1, w.d2 * h + 2.0 * w.d1 * h1 + w.value * h2};
}

double Mollifier::psi(double x) const { return psi_jet(x).value; }

Mollifier build_mollifier(double alpha, double eps, double delta) { return Mollifier(alpha, eps, delta); }

double psi_eval(const Mollifier& m, double x) { return m.psi(x); }

// ---------------------------------------------------------------------------

double SmoothedDistance::convolve_impl(const Impl& impl, double x, int derivative) {
    if (derivative < 0 || derivative > 3) throw DomainError("derivative", "derivative order must be 0..3");
    const Mollifier& m = impl.mollifier;
    const double alpha = m.alpha();
    // d = 0: int |x-y|^{alpha-1} psi; d >= 1: (alpha-1) int sgn(x-y)|x-y|^{alpha-2} psi^{(d-1)}.
    const bool odd_kernel = derivative > 0;
    const int order = derivative > 0 ? derivative - 1 : 0;
    const double beta = odd_kernel ? alpha - 2.0 : alpha - 1.0;
    const double factor = odd_kernel ? alpha - 1.0 : 1.0;
    auto psi_d = [&](double y) {
        const Jet2 j = m.psi_jet(y);
        return order == 0 ? j.value : (order == 1 ? j.d1 : j.d2);
    };

    const auto bp = m.breakpoints();
    std::vector<double> cuts(bp.begin(), bp.end());
    if (x > bp.front() && x < bp.back() && std::find(cuts.begin(), cuts.end(), x) == cuts.end()) {
        cuts.push_back(x);
        std::sort(cuts.begin(), cuts.end());
    }

    const QuadratureSpec& spec = m.conv_quadrature();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double p = cuts[i], q = cuts[i + 1];
        if (x == p || x == q) {
            // int_0^L r^beta g(r) dr = L^{beta+1}/(beta+1) int_0^1 g(L v^{1/(beta+1)}) dv.
            const double len = q - p;
            const double sign = odd_kernel ? (x == p ? -1.0 : 1.0) : 1.0;
            const double inv = 1.0 / (beta + 1.0);
            auto g = [&](double v) {
                const double r = len * std::pow(v, inv);
                return psi_d(x == p ? p + r : q - r);
            };
            const auto r = integrate(g, 0.0, 1.0, spec);
            total += sign * std::pow(len, beta + 1.0) * inv * require_converged(r, "convolution (singular panel)");
        } else {
            auto g = [&](double y) {
                const double z = x - y;
                const double k = std::pow(std::abs(z), beta);
                return (odd_kernel && z < 0.0 ? -k : k) * psi_d(y);
            };
            const auto r = integrate(g, p, q, spec);
            total += require_converged(r, "convolution");
        }
    }
    return factor * total;
}

double SmoothedDistance::far_field_impl(const Impl& impl, double x, int derivative) {
    if (derivative < 0 || derivative > 3) throw DomainError("derivative", "derivative order must be 0..3");
    if (x == 0.0) throw DomainError("x", "far-field expansion needs x != 0");
    const double alpha = impl.mollifier.alpha();
    const double s = x > 0.0 ? 1.0 : -1.0;
    const double r = std::abs(x);
    // d^j/dx^j |x-y|^{alpha-1} = s^j (alpha-1)...(alpha-j) |x-y|^{alpha-1-j} for |x| > |y|
    // and |x-y| = r (1 - s y / r).
    double pre = 1.0;
    for (int j = 0; j < derivative; ++j) pre *= (alpha - 1.0 - j) * s;
    const double a = alpha - 1.0 - derivative;
    double sum = 0.0;
    double ratio = 1.0;
    for (int k = 0; k < kMoments; ++k) {
        sum += binom(a, k) * ratio * impl.moments[static_cast<std::size_t>(k)];
        ratio *= -s / r;
    }
    return pre * std::pow(r, a) * sum;
}

double SmoothedDistance::exact_impl(const Impl& impl, double x, int derivative) {
    if (std::abs(x) > impl.far_radius) return far_field_impl(impl, x, derivative);
    return convolve_impl(impl, x, derivative);
}

SmoothedDistance::SmoothedDistance(Mollifier m) {
    auto impl = std::make_shared<Impl>(Impl{std::move(m), 0.0, {}, {}, {}});
    const Mollifier& mol = impl->mollifier;
    impl->far_radius = kFarFactor * mol.eps();

    const auto bp = mol.breakpoints();
    QuadratureSpec q = mol.conv_quadrature();
    for (int k = 0; k < kMoments; ++k) {
        auto r = integrate([&](double y) { return std::pow(y, k) * mol.psi(y); }, std::span<const double>(bp), q);
        impl->moments.push_back(require_converged(r, "mollifier moment"));
    }

    // Graded nodes: spacing h0 + kappa * (distance to the nearest anchor).
    const double big_r = impl->far_radius;
    const double h0 = mol.support_lo() * mol.rho() / 64.0;
    constexpr double kappa = 0.03;
    const std::array<double, 6> anchors{-big_r, bp[0], bp[1], bp[2], bp[3], big_r};
    std::vector<double>& nodes = impl->nodes;
    nodes.push_back(anchors[0]);
    for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
        const double p = anchors[i], e = anchors[i + 1];
        const bool from_left = i > 0;
        const bool from_right = i + 2 < anchors.size();
        double x = p;
        while (true) {
            double d = std::numeric_limits<double>::infinity();
            if (from_left) d = std::min(d, x - p);
            if (from_right) d = std::min(d, e - x);
            const double h = h0 + kappa * d;
            if (x + 1.5 * h >= e) break;
            x += h;
            nodes.push_back(x);
        }
        nodes.push_back(e);
    }
    impl->values.reserve(nodes.size());
    for (double x : nodes) {
        std::array<double, 4> v{};
        for (int d = 0; d < 4; ++d) v[static_cast<std::size_t>(d)] = convolve_impl(*impl, x, d);
        impl->values.push_back(v);
    }
    impl_ = std::move(impl);
}

double SmoothedDistance::convolve(double x, int derivative) const { return convolve_impl(*impl_, x, derivative); }
double SmoothedDistance::far_field(double x, int derivative) const { return far_field_impl(*impl_, x, derivative); }
double SmoothedDistance::exact(double x, int derivative) const { return exact_impl(*impl_, x, derivative); }

double SmoothedDistance::cached(double x, int derivative) const {
    if (derivative < 0 || derivative > 2) throw DomainError("derivative", "cached derivative order must be 0..2");
    const Impl& impl = *impl_;
    if (std::abs(x) >= impl.far_radius || !std::isfinite(x)) return far_field_impl(impl, x, derivative);
    const auto& nodes = impl.nodes;
    auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    std::size_t i = static_cast<std::size_t>(std::distance(nodes.begin(), it));
    i = std::clamp<std::size_t>(i, 1, nodes.size() - 1) - 1;
    const double h = nodes[i + 1] - nodes[i];
    const double t = (x - nodes[i]) / h;
    const auto& l = impl.values[i];
    const auto& r = impl.values[i + 1];
    if (derivative < 2) {
        const std::size_t o = static_cast<std::size_t>(derivative);
        return quintic_hermite({l[o], l[o + 1], l[o + 2]}, {r[o], r[o + 1], r[o + 2]}, h, t).value;
    }
    // Cubic Hermite on (u'', u''').
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * l[2] + (t3 - 2 * t2 + t) * h * l[3] + (-2 * t3 + 3 * t2) * r[2] +
           (t3 - t2) * h * r[3];
}

SmoothFunction SmoothedDistance::as_function(bool exact) const {
    auto impl = impl_;
    SmoothFunction f;
    if (exact) {
        f.value = [impl](double x) { return exact_impl(*impl, x, 0); };
        f.first = [impl](double x) { return exact_impl(*impl, x, 1); };
        f.second = [impl](double x) { return exact_impl(*impl, x, 2); };
    } else {
        SmoothedDistance self = *this;
        f.value = [self](double x) { return self.cached(x, 0); };
        f.first = [self](double x) { return self.cached(x, 1); };
        f.second = [self](double x) { return self.cached(x, 2); };
    }
    f.far_field = PowerGrowth{1.0, impl->mollifier.alpha() - 1.0, impl->moments[1]};
    return f;
}

SmoothedDistance make_smoothed_distance(const Mollifier& m) { return SmoothedDistance(m); }
double u_eval(const SmoothedDistance& s, double x) { return s.u(x); }
double u_prime(const SmoothedDistance& s, double x) { return s.u_prime(x); }
double u_second(const SmoothedDistance& s, double x) { return s.u_second(x); }

// ---------------------------------------------------------------------------

double derivative_bound_rhs(const Mollifier& m, double x) {
    const double alpha = m.alpha(), eps = m.eps(), delta = m.delta();
    if (std::abs(x) > 2.0 * eps)
        return std::pow(2.0, 2.0 - alpha) * (alpha - 1.0) * std::pow(std::abs(x), alpha - 2.0);
    return std::pow(2.0, 3.0 - alpha) * delta * std::pow(1.0 - 1.0 / delta, alpha - 1.0) /
           (std::pow(eps, 2.0 - alpha) * std::log(delta));
}

namespace {

// Tracks min over points of (rhs - lhs) / |rhs|.
struct MarginTracker {
    double worst = std::numeric_limits<double>::infinity();
    double worst_x = std::numeric_limits<double>::quiet_NaN();
    double lhs = 0.0, rhs = 0.0;
    std::size_t count = 0;

    void add(double x, double l, double r) {
        ++count;
        const double scale = std::abs(r) > 0.0 ? std::abs(r) : 1.0;
        double margin = (r - l) / scale;
        if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
        if (margin < worst) {
            worst = margin;
            worst_x = x;
            lhs = l;
            rhs = r;
        }
    }
    Check check(std::string name, std::string anchor, double tol) const {
        Check c;
        c.name = std::move(name);
        c.anchor = std::move(anchor);
        c.value = worst;
        c.threshold = -tol;
        c.passed = count > 0 && worst >= -tol;
        c.detail = "worst relative margin at x=" + fmt_double(worst_x) + " (lhs=" + fmt_double(lhs) +
                   ", rhs=" + fmt_double(rhs) + ", points=" + std::to_string(count) + ")";
        return c;
    }
};

void fill_header(CertificationReport& rep, const SmoothedDistance& s, std::span<const double> grid) {
    const Mollifier& m = s.mollifier();
    rep.parameters = {{"alpha", m.alpha()},       {"eps", m.eps()},
                      {"delta", m.delta()},       {"rho", m.rho()},
                      {"psi_normalizer", m.psi_normalizer()}, {"far_field_radius", s.far_field_radius()}};
    rep.grid.lo = *std::min_element(grid.begin(), grid.end());
    rep.grid.hi = *std::max_element(grid.begin(), grid.end());
    rep.grid.points = grid.size();
}

const char* kDerivativeAnchor =
    "|u'(x)| <= 2^{2-a}(a-1)|x|^{a-2} for |x| > 2eps, "
    "2^{3-a} delta (1-1/delta)^{a-1} / (eps^{2-a} log delta) for |x| <= 2eps";

Check derivative_check(const SmoothedDistance& s, std::span<const double> grid, const CertifyOptions& opt) {
    MarginTracker t;
    for (double x : grid) {
        const double d = opt.exact ? s.exact(x, 1) : s.u_prime(x);
        t.add(x, std::abs(d), derivative_bound_rhs(s.mollifier(), x));
    }
    return t.check("derivative_bound", kDerivativeAnchor, opt.tol);
}

}  // namespace

CertificationReport certify_derivative_bound(const SmoothedDistance& s, std::span<const double> grid,
                                             const CertifyOptions& opt) {
    if (grid.empty()) throw DomainError("grid", "certification grid must be non-empty");
    CertificationReport rep;
    rep.subject = "mollifier derivative bound";
    fill_header(rep, s, grid);
    rep.add(derivative_check(s, grid, opt));
    return rep;
}

CertificationReport certify_mollifier(const SmoothedDistance& s, std::span<const double> grid,
                                      const CertifyOptions& opt) {
    if (grid.empty()) throw DomainError("grid", "certification grid must be non-empty");
    const Mollifier& m = s.mollifier();
    CertificationReport rep;
    rep.subject = "mollifier";
    fill_header(rep, s, grid);
    const double alpha = m.alpha();
    const double eps_pow = std::pow(m.eps(), alpha - 1.0);
    const double a = m.support_lo(), b = m.support_hi();

    {
        // Dense sweep of the support plus the grid itself.
        MarginTracker cap;
        double outside = 0.0;
        auto visit = [&](double x) {
            const double p = m.psi(x);
            if (x <= a || x >= b) {
                outside = std::max(outside, std::abs(p));
            } else {
                cap.add(x, p * x * std::log(m.delta()), 2.0);
            }
        };
        constexpr int n = 4000;
        for (int i = 0; i <= n; ++i) visit(a + (b - a) * i / n);
        for (double x : grid) visit(x);
        rep.add(cap.check("psi_cap", "0 <= psi(x) <= 2/(x log delta) on [eps/delta, eps]", 0.0));
        Check sup;
        sup.name = "psi_support";
        sup.anchor = "psi = 0 outside [eps/delta, eps]";
        sup.value = outside;
        sup.threshold = 0.0;
        sup.passed = outside == 0.0;
        sup.detail = "max |psi| outside the support";
        rep.add(sup);
    }
    {
        Check c;
        c.name = "psi_normalization";
        c.anchor = "int psi = 1";
        c.value = std::abs(s.moment(0) - 1.0);
        c.threshold = 1e-8;
        c.passed = c.value <= c.threshold;
        c.detail = "int psi = " + fmt_double(s.moment(0));
        rep.add(c);
    }
    MarginTracker lower, upper;
    double max_second = 0.0;
    double max_second_x = 0.0;
    for (double x : grid) {
        const double u = opt.exact ? s.exact(x, 0) : s.u(x);
        const double ax = std::pow(std::abs(x), alpha - 1.0);
        lower.add(x, ax, eps_pow + u);
        upper.add(x, u, ax + eps_pow);
        const double u2 = std::abs(opt.exact ? s.exact(x, 2) : s.u_second(x));
        if (!(u2 <= max_second)) {
            max_second = u2;
            max_second_x = x;
        }
    }
    rep.add(lower.check("lower_bound", "|x|^{a-1} <= eps^{a-1} + u(x)", opt.tol));
    rep.add(upper.check("upper_bound", "u(x) <= |x|^{a-1} + eps^{a-1}", opt.tol));
    rep.add(derivative_check(s, grid, opt));
    Check sec;
    sec.name = "second_derivative_bounded";
    sec.anchor = "sup |u''| < infinity";
    sec.value = max_second;
    sec.threshold = std::numeric_limits<double>::max();
    sec.passed = std::isfinite(max_second);
    sec.detail = "max |u''| at x=" + fmt_double(max_second_x);
    rep.add(sec);
    return rep;
}

KomatsuResult komatsu_check(const SmoothedDistance& s, const StableLaw& law, double theta, double constant,
                            bool exact) {
    if (theta == 0.0 || !std::isfinite(theta)) throw DomainError("theta", "theta must be finite and non-zero");
    if (std::abs(law.alpha() - s.mollifier().alpha()) > 1e-15)
        throw DomainError("alpha", "mollifier and stable law disagree on alpha");
    KomatsuResult r;
    r.theta = theta;
    const auto g = generator_apply_detailed(law, s.as_function(exact), theta);
    r.generator_value = g.value;
    r.generator_error = g.abs_error;
    r.psi_value = s.mollifier().psi(theta);
    r.constant = constant;
    r.residual = std::abs(g.value - constant * r.psi_value);
    r.tolerance = r.psi_value > 0.0 ? 1e-2 * std::abs(constant * r.psi_value) : 1e-4;
    r.passed = r.residual <= r.tolerance;
    return r;
}

double komatsu_identity_residual(const SmoothedDistance& s, const StableLaw& law, double theta) {
    return komatsu_check(s, law, theta, law.big_C_alpha()).residual;
}

}  // namespace stablab
