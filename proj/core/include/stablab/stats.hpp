// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stablab {

/// Pairwise (cascade) summation in index order; the result depends only on
/// the sequence, never on how it was produced.
double pairwise_sum(std::span<const double> v);

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;
};

/// Sample mean and standard error (sample std / sqrt(n)).
MeanEstimate mean_estimate(std::span<const double> v);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Wilson score interval for `successes` out of `trials`.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.96);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    Interval slope_ci;  // t-based, `level` two-sided
    double r_squared = 0.0;
    std::size_t n = 0;
};

/// Ordinary least squares y = intercept + slope x. Throws DomainError for
/// fewer than 2 points or constant x.
LinearFit ols_fit(std::span<const double> x, std::span<const double> y, double level = 0.95);

struct LadderRung {
    std::size_t n = 0;
    MeanEstimate estimate;
    double step = 0.0;  // |mean(n) - mean(n/2)|, 0 on the first rung
    bool stable = true; // step <= z_step * SE(n)
};

struct PathLadder {
    std::vector<LadderRung> rungs;
    LinearFit se_fit;  // log SE against log n
    bool cauchy = false;
    bool rate = false;
    bool passed = false;
};

/// Nested-prefix stability of a sample-mean estimator: means over the first
/// n_min, 2 n_min, ... values. Each doubling must move the mean by at most
/// z_step standard errors of the larger prefix, and the log SE against log n
/// slope must lie within slope_tol of -1/2. Throws DomainError for fewer
/// than 3 rungs.
PathLadder path_ladder(std::span<const double> v, std::size_t n_min, double z_step = 3.0,
                       double slope_tol = 0.15);

}  // namespace stablab
