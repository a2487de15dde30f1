// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "stablab/coefficients.hpp"
#include "stablab/measures.hpp"
#include "stablab/simulator.hpp"
#include "stablab/stats.hpp"

namespace stablab {

enum class RateBranch { holder, log };
enum class DistanceFlavor { weighted, sup };

struct RateBoundSpec {
    double alpha = 1.5;
    double eta_tilde = 1.0;
    RateBranch branch = RateBranch::holder;
    DistanceFlavor flavor = DistanceFlavor::weighted;
    double C_fit = 1.0;
};

/// Validates eta_tilde in [1/alpha, 1] and picks the branch: log iff
/// |eta_tilde - 1/alpha| < 1e-12.
RateBoundSpec make_rate_spec(double alpha, double eta_tilde, DistanceFlavor flavor = DistanceFlavor::weighted,
                             double C_fit = 1.0);

struct RateExponents {
    double e_B = 0.0;  // (a eta - 1) / (a eta - a + 1)
    double e_S = 0.0;  // a - 1/eta
};

RateExponents rate_exponents(const RateBoundSpec& spec);

/// max{B^e_B, S^e_S} (holder) or 1/log(1/max{B, S}) (log; 0 when B = S = 0).
/// Throws AssumptionViolation when B or S >= 1, DomainError when negative.
double distance_term(const RateBoundSpec& spec, double B, double S);

/// C_fit (x0_gap^{a-1} + distance_term).
double theoretical_bound(const RateBoundSpec& spec, double x0_gap, double B, double S);

/// theoretical_bound / h; DomainError for h <= 0.
double tail_bound(const RateBoundSpec& spec, double x0_gap, double B, double S, double h);

enum class FamilyKind { initial_value, drift_bump, jump_bump, jump_holder, mollification };

/// Member n perturbs `base` with size scale 2^{-n}:
///   initial_value: x0_gap = size
///   drift_bump:    drift bump amplitude = size (center/width from base.perturbation)
///   jump_bump:     jump bump amplitude = size
///   jump_holder:   jump amplitude size * min(|x - center|^eta_tilde, 1)
///   mollification: kinked drift replaced by b * K_h with h = size
struct PerturbationFamily {
    FamilyKind kind = FamilyKind::initial_value;
    PairSpec base;
    std::vector<int> indices;
    double scale = 1.0;

    double size(int n) const;
    PairSpec member_spec(int n) const;
    CoefficientPair member(int n, double alpha) const;
};

const char* to_string(FamilyKind k);

struct SweepOptions {
    std::vector<double> h_values;
    /// Row used for one-point calibration of C_fit; -1 picks the first row.
    int calibrate_index = -1;
    TimeGrid time;
    SpaceOptions space;
    SupOptions sup;
};

struct SweepRow {
    int n = 0;
    double size = 0.0;
    double B = 0.0, S = 0.0;
    double x0_gap = 0.0;
    double D = 0.0;      // sup_t E|X_t - X_tilde_t|^{alpha-1} over record times
    double D_se = 0.0;
    double bound = 0.0;  // bracket with C = 1
    double fitted_bound = 0.0;
    bool violation = false;
    std::string violation_reason;
    bool within = false;  // D - 2 se <= C_fit bound
    std::vector<TailEstimate> tails;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double C_fit = 0.0;
    int calibrated_n = 0;
    bool all_within = false;
    LinearFit slope_vs_bound;     // log D against log bound
    LinearFit slope_vs_size;      // log D against log size
    LinearFit S_slope_vs_size;    // log S against log size (when S > 0)
    LinearFit B_slope_vs_size;    // log B against log size (when B > 0)
    std::uint64_t digest = 0;    // baseline leg digest (coupling witness)
};

/// Simulates the baseline and every family member on shared increments,
/// computes B_n, S_n, D_n, tail rows and the one-point-calibrated bound check.
/// Throws DomainError for an empty family.
SweepResult run_sweep(const PerturbationFamily& family, const SimConfig& config, const StableLaw& law,
                      const RateBoundSpec& spec, const SweepOptions& options = {});

struct TailCheckRow {
    TailEstimate tail;
    double lhs = 0.0;     // h P(sup > h)
    double lhs_lo = 0.0;  // h times the Wilson lower limit
    double rhs = 0.0;     // C_fit times the bound numerator
    bool passed = false;
};

struct TailCheck {
    double C_fit = 0.0;
    double numerator = 0.0;
    double calibrate_h = 0.0;
    std::vector<TailCheckRow> rows;
    bool passed = false;
};

/// Tail shape h P(sup > h) <= C_fit numerator with C_fit = h_c P(h_c) / numerator
/// fixed at h_c = calibrate_h; a row passes when h times the Wilson lower limit
/// stays below the calibrated right-hand side.
TailCheck tail_shape_check(const std::vector<TailEstimate>& tails, double numerator, double calibrate_h);

struct ConvergenceRow {
    int n = 0, m = 0;
    double D = 0.0, D_se = 0.0;
    bool monotone = true;  // D_{n,m} <= previous + 2 combined SE
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    double limit_residual = 0.0;  // sup_t E|X^(N) - X^(inf)|^{alpha-1}
    double limit_residual_se = 0.0;
    bool cauchy_decreasing = false;
    LpCheck lp;
    bool passed = false;
};

/// Pairwise distances between successive members, the largest member against
/// the limit coefficients, and the uniform L^p check with exponent p.
ConvergenceReport convergence_experiment(const PerturbationFamily& family, const SimConfig& config,
                                         const StableLaw& law, double p);

}  // namespace stablab
