// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "stablab/generator.hpp"
#include "stablab/interp.hpp"
#include "stablab/quadrature.hpp"
#include "stablab/report.hpp"
#include "stablab/stable_law.hpp"

namespace stablab {

/// psi(x) = N w(x) / (x log delta) on [eps/delta, eps].
///
/// w is a C-infinity window: 1 on [a(1+rho), b(1-rho)] (a = eps/delta, b = eps),
/// S((x-a)/(a rho)) on the left transition and S((b-x)/(b rho)) on the right, with
/// S(t) = phi(t) / (phi(t) + phi(1-t)), phi(t) = exp(-1/t). Because w <= 1 and
/// int 1/(x log delta) = 1 over the support, psi <= 2/(x log delta) iff N <= 2.
class Mollifier {
public:
    /// Picks the largest rho in {0.2, 0.1, 0.05, ...} (down to 1e-4) with
    /// (1+rho)/(1-rho) < delta and N <= 2. Throws DomainError for eps < 1e-6,
    /// delta <= 1, or when no rho is admissible.
    Mollifier(double alpha, double eps, double delta);

    double alpha() const { return alpha_; }
    double eps() const { return eps_; }
    double delta() const { return delta_; }
    double rho() const { return rho_; }
    double psi_normalizer() const { return normalizer_; }
    double support_lo() const { return eps_ / delta_; }
    double support_hi() const { return eps_; }
    const QuadratureSpec& conv_quadrature() const { return conv_quadrature_; }

    /// {a, a(1+rho), b(1-rho), b}: the points where psi changes form.
    std::array<double, 4> breakpoints() const;

    double psi(double x) const;
    /// psi, psi', psi''.
    Jet2 psi_jet(double x) const;

private:
    double alpha_, eps_, delta_, log_delta_;
    double rho_ = 0.0;
    double normalizer_ = 1.0;
    QuadratureSpec conv_quadrature_;
};

Mollifier build_mollifier(double alpha, double eps, double delta);
double psi_eval(const Mollifier& m, double x);

/// The smooth step S and its first two derivatives on [0, 1].
Jet2 smooth_step(double t);

/// u = |.|^{alpha-1} * psi and its derivatives up to order three.
///
/// `convolve` integrates directly (kernel singularity split out by the
/// substitution r = L v^{1/(beta+1)}). `far_field` is the moment expansion of
/// the kernel, exact to roundoff for |x| > far_field_radius() = 50 eps.
/// `exact` picks between the two. u/u_prime/u_second read a quintic Hermite
/// cache on [-50 eps, 50 eps] and fall back to the far field beyond it.
class SmoothedDistance {
public:
    explicit SmoothedDistance(Mollifier m);

    const Mollifier& mollifier() const { return impl_->mollifier; }
    double far_field_radius() const { return impl_->far_radius; }
    std::size_t cache_nodes() const { return impl_->nodes.size(); }
    /// int y^k psi(y) dy.
    double moment(int k) const { return impl_->moments.at(static_cast<std::size_t>(k)); }

    double convolve(double x, int derivative) const;
    double far_field(double x, int derivative) const;
    double exact(double x, int derivative) const;

    double u(double x) const { return cached(x, 0); }
    double u_prime(double x) const { return cached(x, 1); }
    double u_second(double x) const { return cached(x, 2); }
    double cached(double x, int derivative) const;

    /// View as a SmoothFunction for generator evaluation; `exact` selects the
    /// quadrature path instead of the cache.
    SmoothFunction as_function(bool exact = true) const;

private:
    struct Impl {
        Mollifier mollifier;
        double far_radius = 0.0;
        std::vector<double> moments;
        std::vector<double> nodes;
        std::vector<std::array<double, 4>> values;  // u, u', u'', u''' at nodes
    };
    static double convolve_impl(const Impl& impl, double x, int derivative);
    static double far_field_impl(const Impl& impl, double x, int derivative);
    static double exact_impl(const Impl& impl, double x, int derivative);
    std::shared_ptr<const Impl> impl_;
};

SmoothedDistance make_smoothed_distance(const Mollifier& m);
double u_eval(const SmoothedDistance& s, double x);
double u_prime(const SmoothedDistance& s, double x);
double u_second(const SmoothedDistance& s, double x);

/// Right-hand side of the derivative bound on |u'|.
double derivative_bound_rhs(const Mollifier& m, double x);

struct CertifyOptions {
    double tol = 1e-3;
    bool exact = true;
};

/// |u'| against derivative_bound_rhs on every grid point. Throws DomainError
/// on an empty grid.
CertificationReport certify_derivative_bound(const SmoothedDistance& s, std::span<const double> grid,
                                             const CertifyOptions& opt = {});

/// All pointwise properties of psi and u on the grid: psi cap, normalization,
/// both two-sided bounds on u, the derivative bound and finiteness of u''.
CertificationReport certify_mollifier(const SmoothedDistance& s, std::span<const double> grid,
                                      const CertifyOptions& opt = {});

struct KomatsuResult {
    double theta = 0.0;
    double generator_value = 0.0;
    double generator_error = 0.0;
    double psi_value = 0.0;
    double constant = 0.0;
    double residual = 0.0;   // |L u(theta) - constant psi(theta)|
    double tolerance = 0.0;  // 1e-2 |constant psi| where psi > 0, else 1e-4
    bool passed = false;
};

/// Throws DomainError for theta == 0.
KomatsuResult komatsu_check(const SmoothedDistance& s, const StableLaw& law, double theta, double constant,
                            bool exact = true);

/// |L u(theta) - big_C_alpha psi(theta)|.
double komatsu_identity_residual(const SmoothedDistance& s, const StableLaw& law, double theta);

}  // namespace stablab
