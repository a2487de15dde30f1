// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace stablab {

/// Epanechnikov-smoothed |x|: equals (|.| * K_h)(x) with K_h(y) = 3/(4h) (1 - (y/h)^2)_+.
double smoothed_abs(double x, double h);

enum class DriftKind { zero, linear, tanh, kinked };
enum class JumpKind { constant, cosine };
enum class ShapeKind { none, shift, bump, holder, mollify };
enum class TimeProfileKind { constant, exp_decay, window };

/// Baseline drift:
///   zero:   0
///   linear: -beta (x - center)
///   tanh:   -beta tanh(x - center)
///   kinked: beta (0.5 - min(|z|, 1)), z = x - center, written through |.| so
///           that smoothing |.| by K_h gives the mollified drift b * K_h.
struct DriftSpec {
    DriftKind kind = DriftKind::zero;
    double beta = 1.0;
    double center = 0.0;
};

/// Baseline jump coefficient: s0 (constant) or s0 + s1 cos(omega x).
struct JumpSpec {
    JumpKind kind = JumpKind::constant;
    double s0 = 1.0;
    double s1 = 0.0;
    double omega = 1.0;
};

struct TimeProfile {
    TimeProfileKind kind = TimeProfileKind::constant;
    double rate = 1.0;  // exp_decay: exp(-rate t)
    double t0 = 0.0;    // window: 1 on [t0, t1), else 0
    double t1 = std::numeric_limits<double>::infinity();
    double operator()(double t) const;
};

/// Additive perturbation amplitude * profile(t) * shape(x) on the drift and
/// jump coefficients. Shapes:
///   shift:   1
///   bump:    (1 - z^2)^2 on |z| < 1, z = (x - center)/width
///   holder:  min(|x - center|^eta_tilde, 1)           (jump only)
///   mollify: replaces the kinked baseline drift by b * K_h, h = width (drift only)
struct PerturbationSpec {
    ShapeKind drift_shape = ShapeKind::none;
    double drift_amplitude = 0.0;
    double drift_center = 0.0;
    double drift_width = 1.0;
    ShapeKind jump_shape = ShapeKind::none;
    double jump_amplitude = 0.0;
    double jump_center = 0.0;
    double jump_width = 1.0;
    double eta_tilde = 1.0;
    TimeProfile profile;
};

struct PairSpec {
    DriftSpec drift;
    JumpSpec jump;
    PerturbationSpec perturbation;
    double x0 = 0.0;
    double x0_gap = 0.0;  // x0_tilde = x0 + x0_gap
};

struct CoefficientPair {
    std::string description;
    std::function<double(double)> b, sigma;
    std::function<double(double, double)> b_tilde, sigma_tilde;  // (t, x)
    double x0 = 0.0, x0_tilde = 0.0;
    double K = 0.0;
    double k = 0.0;
    double eta = 1.0;
    double eta_tilde = 1.0;
    std::function<double(double)> f_b_tilde, f_sigma_tilde, g_sigma_tilde;
    /// Spatial points where the coefficients change form (quadrature hints).
    std::vector<double> features;
    /// Times where the perturbation switches (quadrature hints).
    std::vector<double> time_breaks;
    /// True when the perturbed coefficients coincide with the baseline.
    bool unperturbed = false;
};

/// Builds the pair from catalog parameters. Throws DomainError for invalid
/// parameters (non-positive sigma lower bound, eta_tilde outside [1/alpha, 1],
/// widths <= 0, holder/mollify shapes on the wrong coefficient).
CoefficientPair make_pair(const PairSpec& spec, double alpha);

/// Baseline drift function for a spec (used for limit legs).
std::function<double(double)> make_drift(const DriftSpec& d, double mollify_h = 0.0);
std::function<double(double)> make_jump(const JumpSpec& j);

struct PairValidation {
    bool ok = true;
    std::vector<std::string> problems;
};

/// Spot checks: k <= sigma <= K on a grid over [x0 - 10, x0 + 10], eta_tilde in
/// [1/alpha, 1], and the declared Lipschitz / Holder factors on random pairs.
PairValidation validate_pair(const CoefficientPair& pair, double alpha, double T, std::uint64_t seed = 7);

const char* to_string(DriftKind k);
const char* to_string(JumpKind k);
const char* to_string(ShapeKind k);
const char* to_string(TimeProfileKind k);

}  // namespace stablab
