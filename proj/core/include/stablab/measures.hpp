// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "stablab/coefficients.hpp"
#include "stablab/simulator.hpp"
#include "stablab/stable_law.hpp"

namespace stablab {

/// Density of mu^{alpha,t}_{x0,sigma}:
///   (t^{1/a} sigma_x0^{1/a})^{-1} g((y - x0) / (t^{1/a} sigma_x0^{1/a})).
double weighted_measure_density(const StableLaw& law, double x0, double sigma_x0, double t, double y);

enum class DensityMode { frozen_upper, frozen_plain, empirical };

/// Histogram of one leg of a simulated ensemble at each record time.
struct EmpiricalDensity {
    std::shared_ptr<const EnsembleData> data;
    std::size_t leg = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> edges;    // [record] bin edges
    std::vector<std::vector<double>> density;  // [record] count / (N width)
    std::vector<std::vector<std::size_t>> counts;
    std::size_t samples = 0;
    /// Histogram value at the record time nearest to t.
    double operator()(double t, double y) const;
};

struct DensityModel {
    DensityMode mode = DensityMode::frozen_plain;
    double M = 1.0;
    StableLaw law{1.5};
    std::function<double(double)> sigma_ref;
    double x0 = 0.0;
    /// Upper bound of sigma_ref, fixes the spatial window scale.
    double sigma_sup = 1.0;
    std::shared_ptr<const EmpiricalDensity> empirical;
};

DensityModel make_frozen_model(const StableLaw& law, const CoefficientPair& pair,
                               DensityMode mode = DensityMode::frozen_plain, double M = 1.0);

/// Empirical model from leg `leg` of a simulated ensemble; `bins` histogram
/// bins over the central 98% of each time slice.
DensityModel make_empirical_model(const StableLaw& law, const CoefficientPair& pair,
                                  std::shared_ptr<const EnsembleData> data, std::size_t leg = 0, int bins = 60);

/// p^0_t(x0, y) = (t^{1/a} sigma(y)^{1/a})^{-1} g((y - x0)/(t^{1/a} sigma(y)^{1/a}))
/// in the frozen modes (times M in frozen_upper); histogram value in empirical mode.
double frozen_density(const DensityModel& model, double t, double y);

/// Window quadrature of frozen_density plus the analytic envelope tail.
double frozen_mass(const DensityModel& model, double t, double rel_tol = 1e-6);

struct SpaceOptions {
    double rel_tol = 1e-6;
    double scale_factor = 1.0;
};

/// (int |f|^p dmu)^{1/p} over [x0 - R, x0 + R], R = scale max(10, rel_tol^{-1/a}),
/// with a tail term from the growth rate of f fitted at large |y|.
/// Throws DomainError when that growth makes the tail diverge.
double weighted_norm(const std::function<double(double)>& f, double p, const StableLaw& law, double x0,
                     double sigma_x0, double t, const SpaceOptions& opt = {});

/// Nodes s_j = T (j/J)^gamma, gamma <= 0 meaning gamma = alpha; each panel
/// integrated by 10-point Gauss-Legendre.
struct TimeGrid {
    int panels = 40;
    double gamma = 0.0;
};

/// B = int_0^T int |b(y) - b_tilde(s, y)| p_s(x0, y) dy ds. In empirical mode
/// the Monte Carlo average over the stored paths of sum_r |b - b_tilde|(t_r, X_{t_r}) dt_r.
double distance_B(const CoefficientPair& pair, const DensityModel& model, double T, const TimeGrid& grid = {},
                  const SpaceOptions& opt = {});
/// S = (int_0^T int |sigma(y) - sigma_tilde(s, y)|^alpha p_s(x0, y) dy ds)^{1/alpha}.
double distance_S(const CoefficientPair& pair, const DensityModel& model, double T, const TimeGrid& grid = {},
                  const SpaceOptions& opt = {});

enum class SupVariant { time_integral, time_sup };

struct SupOptions {
    double half_width = 10.0;
    std::size_t points = 10000;
    int time_panels = 40;
    SupVariant variant = SupVariant::time_integral;
};

struct SupDistance {
    double value = 0.0;
    double window_lo = 0.0, window_hi = 0.0;
    std::size_t points = 0;
    SupVariant variant = SupVariant::time_integral;
};

/// int_0^T sup_y |b - b_tilde| ds or sup_t sup_y |b - b_tilde| over the window.
SupDistance distance_B_sup(const CoefficientPair& pair, double T, const SupOptions& opt = {});
/// (int_0^T sup_y |sigma - sigma_tilde|^alpha ds)^{1/alpha} or sup_t sup_y |sigma - sigma_tilde|.
SupDistance distance_S_sup(const CoefficientPair& pair, double alpha, double T, const SupOptions& opt = {});

struct DensityBand {
    double m = 0.0;
    double M = 0.0;
    std::size_t bins_used = 0;
};

/// Fitted [m, M] from histogram / p^0 ratios over the central 98% mass of each
/// record time t > 0, bins with fewer than `min_count` samples skipped.
DensityBand fit_density_band(const DensityModel& frozen, const EmpiricalDensity& empirical, std::size_t min_count = 50);

}  // namespace stablab
