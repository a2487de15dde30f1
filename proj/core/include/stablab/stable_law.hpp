// SPDX-License-Identifier: MIT
#pragma once

// Symmetric alpha-stable law with 1 < alpha < 2.
//
// Normalization: Z_1 has characteristic function exp(-|u|^alpha). This is the
// law whose Levy measure is c_alpha |z|^{-1-alpha} dz with
//     c_alpha = Gamma(alpha + 1) sin(alpha pi / 2) / pi,
// since  int (1 - cos(uz)) c_alpha |z|^{-1-alpha} dz = |u|^alpha  for that
// constant. Density, sampler and the tail constant are therefore consistent:
// g(x) ~ c_alpha |x|^{-1-alpha} as |x| -> infinity.

#include <memory>
#include <span>
#include <vector>

#include "stablab/interp.hpp"
#include "stablab/quadrature.hpp"
#include "stablab/report.hpp"
#include "stablab/rng.hpp"

namespace stablab {

class StableLaw {
public:
    explicit StableLaw(double alpha, QuadratureSpec density_quadrature = default_quadrature());

    double alpha() const noexcept { return alpha_; }
    /// Levy-measure constant c_alpha.
    double c_alpha() const noexcept { return c_alpha_; }
    /// -2 alpha sin(alpha pi/2) cot(alpha pi/2) Gamma(alpha+1), the constant
    /// quoted for the identity L u_{delta,eps} = C psi_{delta,eps}.
    double big_C_alpha() const noexcept { return big_C_alpha_; }
    /// Mass of L|x|^{alpha-1} as a distribution, computed from c_alpha:
    /// L|x|^{alpha-1} = generator_mass * delta_0 with
    /// generator_mass = -2 Gamma(alpha) cos(alpha pi / 2) = big_C_alpha / alpha^2.
    double generator_mass() const noexcept { return generator_mass_; }
    const QuadratureSpec& density_quadrature() const noexcept { return quadrature_; }

    static QuadratureSpec default_quadrature();

private:
    double alpha_;
    double c_alpha_;
    double big_C_alpha_;
    double generator_mass_;
    QuadratureSpec quadrature_;
};

StableLaw make_stable_law(double alpha);

/// g(x): density of Z_1. Cosine-transform quadrature for |x| <= cutoff,
/// large-|x| series beyond. Throws NumericError when neither converges.
double stable_density(const StableLaw& law, double x);

/// Value, first and second derivative of g by direct quadrature.
Jet2 stable_density_jet(const StableLaw& law, double x);

/// Large-|x| (Bergstrom) series for g. `terms_used` receives the number of
/// terms summed; returns NaN when the smallest term is not below tolerance.
double stable_density_series(double alpha, double x, int* terms_used = nullptr);

/// P(Z_1 > x) for x > 0 from the termwise integrated large-|x| series; NaN
/// when the series does not converge at x.
double stable_tail_series(double alpha, double x);

/// P(Z_1 <= x): quadrature of the tabulated density inside the series cutoff,
/// the tail series beyond it.
double stable_cdf(const StableLaw& law, double x);

/// G(x) = max(|x|, 1)^{-1-alpha}.
double density_envelope(const StableLaw& law, double x);

struct Comparability {
    double c_lower = 0.0;
    double c_upper = 0.0;
};

/// Empirical min/max of g / G over the grid.
Comparability envelope_comparability_check(const StableLaw& law, std::span<const double> grid);

/// Normalization with tail correction, g(0) against Gamma(1 + 1/alpha)/pi,
/// the tail ratio g(x)/(c_alpha |x|^{-1-alpha}) at |x| = 50, symmetry and
/// positivity on the grid, CDF continuity at the series cutoff and the
/// envelope comparability constants.
CertificationReport certify_density(const StableLaw& law, std::span<const double> grid);

/// Standard symmetric stable variate (Chambers-Mallows-Stuck).
double sample_standard(const StableLaw& law, RngStream& stream);

/// Increment of the driving process over a step dt: dt^{1/alpha} * xi.
double sample_increment(const StableLaw& law, double dt, RngStream& stream);

/// Tabulated g for repeated evaluation: quintic Hermite on a uniform grid over
/// [0, cutoff], series beyond. Immutable and shareable.
class DensityTable {
public:
    explicit DensityTable(const StableLaw& law, double spacing = 1.0 / 32.0);

    double operator()(double x) const;
    double alpha() const noexcept { return alpha_; }
    double cutoff() const noexcept { return cutoff_; }

private:
    double alpha_;
    double cutoff_;
    double spacing_;
    std::vector<Jet2> nodes_;
};

/// Process-wide cache of density tables keyed by alpha and cutoff.
std::shared_ptr<const DensityTable> density_table(const StableLaw& law);

}  // namespace stablab
