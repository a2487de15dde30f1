// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "stablab/coefficients.hpp"
#include "stablab/stable_law.hpp"
#include "stablab/stats.hpp"

namespace stablab {

struct SimConfig {
    double T = 1.0;
    int n_steps = 100;
    std::size_t n_paths = 1000;
    std::uint64_t seed = 1;
    double x_clip = 1e12;
    /// Number of evenly spaced grid times (including 0 and T) whose states are kept.
    int n_records = 21;
    /// Worker threads; 0 picks the hardware concurrency. Never affects results.
    int threads = 0;
    /// Keep every grid state of every leg (memory heavy).
    bool keep_paths = false;
    void validate() const;
};

/// One SDE driven by the shared increments: dX = drift(t, X) dt + jump(t, X) dZ.
struct Leg {
    std::string label;
    std::function<double(double, double)> drift;
    std::function<double(double, double)> jump;
    double x0 = 0.0;
};

Leg baseline_leg(const CoefficientPair& pair);
Leg perturbed_leg(const CoefficientPair& pair);

struct LegPair {
    std::size_t a = 0, b = 0;
};

/// Along leg `a`, accumulate sum_k |drift_a - drift_b|(t_k, X^a_k) dt and
/// sum_k |jump_a - jump_b|^alpha (t_k, X^a_k) dt.
struct Accumulator {
    std::size_t a = 0, b = 0;
};

/// Raw output of one simulation run. Indices: [leg][path][record],
/// [pair][path], [accumulator][path].
struct EnsembleData {
    SimConfig config;
    double alpha = 0.0;
    std::vector<std::string> labels;
    std::vector<double> x0;
    std::vector<int> record_steps;
    std::vector<double> record_times;
    std::vector<double> records;
    std::vector<double> sup_abs;                 // [leg][path] grid sup |X|
    std::vector<std::uint64_t> path_digest;      // [leg][path] FNV-1a over consumed increments
    std::vector<std::uint64_t> leg_digest;       // [leg] fold of path digests in index order
    std::vector<LegPair> pairs;
    std::vector<double> pair_sup;                // [pair][path] grid sup |X^a - X^b|
    std::vector<Accumulator> accumulators;
    std::vector<double> acc_drift, acc_jump;     // [accumulator][path]
    std::vector<std::uint8_t> flagged;           // [path]
    std::size_t n_flagged = 0;
    std::vector<double> full_paths;              // [leg][path][step] when keep_paths

    std::size_t n_legs() const { return labels.size(); }
    std::size_t n_paths() const { return config.n_paths; }
    std::size_t n_records() const { return record_times.size(); }
    double record(std::size_t leg, std::size_t path, std::size_t r) const {
        return records[(leg * n_paths() + path) * n_records() + r];
    }
    bool valid(std::size_t path) const { return flagged[path] == 0; }
    /// Per valid path values of grid sup |X^leg|.
    std::vector<double> leg_sup(std::size_t leg) const;
};

/// Euler scheme for all legs with one increment sequence per path drawn from
/// RngStream(seed, path). A path is flagged (and excluded from statistics)
/// when any leg leaves [-x_clip, x_clip] or turns non-finite; more than 1%
/// flagged paths raises NumericError.
std::shared_ptr<const EnsembleData> simulate_legs(const SimConfig& config, const std::vector<Leg>& legs,
                                                  const StableLaw& law, const std::vector<LegPair>& pairs = {},
                                                  const std::vector<Accumulator>& accumulators = {});

/// View of two legs of an EnsembleData as the (X, X_tilde) pair.
class CoupledPathEnsemble {
public:
    CoupledPathEnsemble(std::shared_ptr<const EnsembleData> data, std::size_t leg_x, std::size_t leg_x_tilde,
                        std::size_t pair_index, std::ptrdiff_t accumulator_index = -1);

    const EnsembleData& data() const { return *data_; }
    std::shared_ptr<const EnsembleData> shared_data() const { return data_; }
    std::size_t n_paths() const { return data_->n_paths(); }
    std::size_t n_valid() const { return data_->n_paths() - data_->n_flagged; }
    const std::vector<double>& times() const { return data_->record_times; }
    double x(std::size_t path, std::size_t r) const { return data_->record(leg_x_, path, r); }
    double x_tilde(std::size_t path, std::size_t r) const { return data_->record(leg_xt_, path, r); }
    /// Grid sup over all steps of |X - X_tilde|.
    double grid_sup(std::size_t path) const { return data_->pair_sup[pair_ * n_paths() + path]; }
    bool valid(std::size_t path) const { return data_->valid(path); }
    std::uint64_t digest_x() const { return data_->leg_digest[leg_x_]; }
    std::uint64_t digest_x_tilde() const { return data_->leg_digest[leg_xt_]; }
    bool has_accumulator() const { return acc_ >= 0; }
    /// Per-path accumulated drift / jump gaps (valid paths only).
    std::vector<double> drift_gap_integrals() const;
    std::vector<double> jump_gap_integrals() const;
    std::size_t leg_x() const { return leg_x_; }
    std::size_t leg_x_tilde() const { return leg_xt_; }

private:
    std::shared_ptr<const EnsembleData> data_;
    std::size_t leg_x_, leg_xt_, pair_;
    std::ptrdiff_t acc_;
};

CoupledPathEnsemble simulate_coupled(const SimConfig& config, const CoefficientPair& pair, const StableLaw& law);

struct MomentCurve {
    std::vector<double> times;
    std::vector<double> mean;
    std::vector<double> std_error;
    double sup_mean = 0.0;
    double sup_std_error = 0.0;
    double sup_time = 0.0;
};

/// E|X_t - X_tilde_t|^q on the record times. Throws DomainError unless 0 < q < alpha.
MomentCurve distance_moment_curve(const CoupledPathEnsemble& ens, double q);

/// |X_T - X_tilde_T|^q per valid path.
std::vector<double> terminal_distance_powers(const CoupledPathEnsemble& ens, double q);

struct TailEstimate {
    double h = 0.0;
    double probability = 0.0;
    Interval ci;
    std::size_t exceed = 0;
    std::size_t trials = 0;
};

/// Fraction of valid paths with grid-sup |X - X_tilde|^{alpha-1} > h, with a
/// Wilson interval. Throws DomainError for h <= 0.
TailEstimate tail_probability(const CoupledPathEnsemble& ens, double h);

struct LpRow {
    double index = 0.0;
    MeanEstimate moment;
    bool within = false;
};

struct LpCheck {
    double p = 0.0;
    double common = 0.0;  // inverse-variance weighted mean
    std::vector<LpRow> rows;
    LinearFit trend;      // moment against index (informational)
    bool passed = false;
};

/// E[sup_k |X^(n)_k|^p] per member; passes iff every member is within 3
/// standard errors of the common constant. Throws DomainError unless 1 < p < alpha.
LpCheck uniform_lp_check(const std::vector<std::pair<double, std::vector<double>>>& members, double p,
                         double alpha);

/// Convenience: members are legs of one run, sup values taken from leg_sup.
LpCheck uniform_lp_check(const EnsembleData& data, const std::vector<std::size_t>& legs,
                         const std::vector<double>& index, double p);

}  // namespace stablab
