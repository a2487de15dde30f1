// SPDX-License-Identifier: MIT
#include "stablab/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <thread>

#include "stablab/error.hpp"
#include "stablab/rng.hpp"

namespace stablab {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

inline std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
        h ^= (word >> (8 * i)) & 0xffU;
        h *= kFnvPrime;
    }
    return h;
}

inline std::uint64_t bits_of(double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, sizeof u);
    return u;
}

int worker_count(const SimConfig& c) {
    int n = c.threads > 0 ? c.threads : static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, n);
}

}  // namespace

void SimConfig::validate() const {
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("T", "T must be positive and finite");
    if (n_steps < 1) throw DomainError("n_steps", "n_steps must be >= 1");
    if (n_paths < 1) throw DomainError("n_paths", "n_paths must be >= 1");
    if (!(x_clip > 0.0)) throw DomainError("x_clip", "x_clip must be positive");
    if (n_records < 2) throw DomainError("n_records", "n_records must be >= 2");
    if (threads < 0) throw DomainError("threads", "threads must be >= 0");
}

Leg baseline_leg(const CoefficientPair& pair) {
    return {"X", [b = pair.b](double, double x) { return b(x); }, [s = pair.sigma](double, double x) { return s(x); },
            pair.x0};
}

Leg perturbed_leg(const CoefficientPair& pair) { return {"X_tilde", pair.b_tilde, pair.sigma_tilde, pair.x0_tilde}; }

std::vector<double> EnsembleData::leg_sup(std::size_t leg) const {
    std::vector<double> out;
    out.reserve(n_paths());
    for (std::size_t p = 0; p < n_paths(); ++p)
        if (valid(p)) out.push_back(sup_abs[leg * n_paths() + p]);
    return out;
}

std::shared_ptr<const EnsembleData> simulate_legs(const SimConfig& config, const std::vector<Leg>& legs,
                                                  const StableLaw& law, const std::vector<LegPair>& pairs,
                                                  const std::vector<Accumulator>& accumulators) {
    config.validate();
    if (legs.empty()) throw DomainError("legs", "at least one leg is required");
    const std::size_t n_legs = legs.size();
    for (const auto& pr : pairs)
        if (pr.a >= n_legs || pr.b >= n_legs) throw DomainError("pairs", "leg index out of range");
    for (const auto& ac : accumulators)
        if (ac.a >= n_legs || ac.b >= n_legs) throw DomainError("accumulators", "leg index out of range");

    auto data = std::make_shared<EnsembleData>();
    EnsembleData& d = *data;
    d.config = config;
    d.alpha = law.alpha();
    for (const auto& l : legs) {
        d.labels.push_back(l.label);
        d.x0.push_back(l.x0);
    }
    const int n_steps = config.n_steps;
    const int n_rec = std::min(config.n_records, n_steps + 1);
    for (int r = 0; r < n_rec; ++r) {
        const int k = static_cast<int>(std::llround(static_cast<double>(r) * n_steps / (n_rec - 1)));
        d.record_steps.push_back(k);
        d.record_times.push_back(config.T * k / n_steps);
    }
    const std::size_t n_paths = config.n_paths;
    d.records.assign(n_legs * n_paths * static_cast<std::size_t>(n_rec), 0.0);
    d.sup_abs.assign(n_legs * n_paths, 0.0);
    d.path_digest.assign(n_legs * n_paths, 0);
    d.pairs = pairs;
    d.pair_sup.assign(pairs.size() * n_paths, 0.0);
    d.accumulators = accumulators;
    d.acc_drift.assign(accumulators.size() * n_paths, 0.0);
    d.acc_jump.assign(accumulators.size() * n_paths, 0.0);
    d.flagged.assign(n_paths, 0);
    if (config.keep_paths) d.full_paths.assign(n_legs * n_paths * static_cast<std::size_t>(n_steps + 1), 0.0);

    const double dt = config.T / n_steps;
    const double alpha = law.alpha();
    const double clip = config.x_clip;

    auto run_path = [&](std::size_t path, std::vector<double>& x, std::vector<double>& next) {
        RngStream rng(config.seed, path);
        for (std::size_t l = 0; l < n_legs; ++l) {
            x[l] = legs[l].x0;
            d.path_digest[l * n_paths + path] = kFnvOffset;
        }
        std::size_t rec = 0;
        auto observe = [&](int k) {
            for (std::size_t l = 0; l < n_legs; ++l) {
                const std::size_t i = l * n_paths + path;
                d.sup_abs[i] = std::max(d.sup_abs[i], std::abs(x[l]));
                if (config.keep_paths) d.full_paths[i * static_cast<std::size_t>(n_steps + 1) + k] = x[l];
            }
            for (std::size_t q = 0; q < pairs.size(); ++q) {
                const std::size_t i = q * n_paths + path;
                d.pair_sup[i] = std::max(d.pair_sup[i], std::abs(x[pairs[q].a] - x[pairs[q].b]));
            }
            while (rec < static_cast<std::size_t>(n_rec) && d.record_steps[rec] == k) {
                for (std::size_t l = 0; l < n_legs; ++l)
                    d.records[(l * n_paths + path) * static_cast<std::size_t>(n_rec) + rec] = x[l];
                ++rec;
            }
        };
        observe(0);
        for (int k = 0; k < n_steps; ++k) {
            const double t = k * dt;
            const double dz = sample_increment(law, dt, rng);
            const std::uint64_t dz_bits = bits_of(dz);
            bool bad = false;
            for (std::size_t l = 0; l < n_legs; ++l) {
                const double xl = x[l];
                next[l] = xl + legs[l].drift(t, xl) * dt + legs[l].jump(t, xl) * dz;
                std::uint64_t& h = d.path_digest[l * n_paths + path];
                h = fnv_mix(h, dz_bits);
                if (!std::isfinite(next[l]) || std::abs(next[l]) > clip) bad = true;
            }
            for (std::size_t q = 0; q < accumulators.size(); ++q) {
                const auto& ac = accumulators[q];
                const double xa = x[ac.a];
                const std::size_t i = q * n_paths + path;
                d.acc_drift[i] += std::abs(legs[ac.a].drift(t, xa) - legs[ac.b].drift(t, xa)) * dt;
                d.acc_jump[i] += std::pow(std::abs(legs[ac.a].jump(t, xa) - legs[ac.b].jump(t, xa)), alpha) * dt;
            }
            if (bad) {
                d.flagged[path] = 1;
                return;
            }
            std::swap(x, next);
            observe(k + 1);
        }
    };

    const int workers = std::min<int>(worker_count(config), static_cast<int>(std::max<std::size_t>(1, n_paths / 64)));
    constexpr std::size_t chunk = 64;
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        std::vector<double> x(n_legs), next(n_legs);
        while (true) {
            const std::size_t start = cursor.fetch_add(chunk);
            if (start >= n_paths) break;
            const std::size_t end = std::min(n_paths, start + chunk);
            for (std::size_t p = start; p < end; ++p) run_path(p, x, next);
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // A flagged path keeps whatever it recorded before leaving the clip range;
    // mark its records NaN so accidental use is visible.
    for (std::size_t p = 0; p < n_paths; ++p) {
        if (!d.flagged[p]) continue;
        ++d.n_flagged;
        for (std::size_t l = 0; l < n_legs; ++l)
            for (int r = 0; r < n_rec; ++r)
                d.records[(l * n_paths + p) * static_cast<std::size_t>(n_rec) + r] = std::nan("");
    }
    d.leg_digest.assign(n_legs, kFnvOffset);
    for (std::size_t l = 0; l < n_legs; ++l)
        for (std::size_t p = 0; p < n_paths; ++p) d.leg_digest[l] = fnv_mix(d.leg_digest[l], d.path_digest[l * n_paths + p]);

    const double frac = static_cast<double>(d.n_flagged) / static_cast<double>(n_paths);
    if (frac > 0.01)
        throw NumericError("more than 1% of paths left the clip range (" + std::to_string(d.n_flagged) + " of " +
                               std::to_string(n_paths) + ")",
                           frac, 0.01);
    return data;
}

CoupledPathEnsemble::CoupledPathEnsemble(std::shared_ptr<const EnsembleData> data, std::size_t leg_x,
                                         std::size_t leg_x_tilde, std::size_t pair_index,
                                         std::ptrdiff_t accumulator_index)
    : data_(std::move(data)), leg_x_(leg_x), leg_xt_(leg_x_tilde), pair_(pair_index), acc_(accumulator_index) {
    if (!data_) throw DomainError("ensemble", "null ensemble data");
    if (leg_x_ >= data_->n_legs() || leg_xt_ >= data_->n_legs()) throw DomainError("ensemble", "leg out of range");
    if (pair_ >= data_->pairs.size() || data_->pairs[pair_].a != leg_x_ || data_->pairs[pair_].b != leg_xt_)
        throw DomainError("ensemble", "pair index does not match the legs");
    if (acc_ >= static_cast<std::ptrdiff_t>(data_->accumulators.size()))
        throw DomainError("ensemble", "accumulator out of range");
}

std::vector<double> CoupledPathEnsemble::drift_gap_integrals() const {
    if (acc_ < 0) throw DomainError("ensemble", "no gap accumulator recorded");
    std::vector<double> out;
    for (std::size_t p = 0; p < n_paths(); ++p)
        if (valid(p)) out.push_back(data_->acc_drift[static_cast<std::size_t>(acc_) * n_paths() + p]);
    return out;
}

std::vector<double> CoupledPathEnsemble::jump_gap_integrals() const {
    if (acc_ < 0) throw DomainError("ensemble", "no gap accumulator recorded");
    std::vector<double> out;
    for (std::size_t p = 0; p < n_paths(); ++p)
        if (valid(p)) out.push_back(data_->acc_jump[static_cast<std::size_t>(acc_) * n_paths() + p]);
    return out;
}

CoupledPathEnsemble simulate_coupled(const SimConfig& config, const CoefficientPair& pair, const StableLaw& law) {
    auto data = simulate_legs(config, {baseline_leg(pair), perturbed_leg(pair)}, law, {{0, 1}}, {{0, 1}});
    return CoupledPathEnsemble(std::move(data), 0, 1, 0, 0);
}

MomentCurve distance_moment_curve(const CoupledPathEnsemble& ens, double q) {
    const double alpha = ens.data().alpha;
    if (!(q > 0.0 && q < alpha)) throw DomainError("q", "moment order must satisfy 0 < q < alpha");
    MomentCurve c;
    c.times = ens.times();
    std::vector<double> v;
    v.reserve(ens.n_valid());
    c.sup_mean = -1.0;
    for (std::size_t r = 0; r < c.times.size(); ++r) {
        v.clear();
        for (std::size_t p = 0; p < ens.n_paths(); ++p)
            if (ens.valid(p)) v.push_back(std::pow(std::abs(ens.x(p, r) - ens.x_tilde(p, r)), q));
        const auto m = mean_estimate(v);
        c.mean.push_back(m.mean);
        c.std_error.push_back(m.std_error);
        if (m.mean > c.sup_mean) {
            c.sup_mean = m.mean;
            c.sup_std_error = m.std_error;
            c.sup_time = c.times[r];
        }
    }
    return c;
}

std::vector<double> terminal_distance_powers(const CoupledPathEnsemble& ens, double q) {
    std::vector<double> v;
    const std::size_t last = ens.times().size() - 1;
    for (std::size_t p = 0; p < ens.n_paths(); ++p)
        if (ens.valid(p)) v.push_back(std::pow(std::abs(ens.x(p, last) - ens.x_tilde(p, last)), q));
    return v;
}

TailEstimate tail_probability(const CoupledPathEnsemble& ens, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("h", "h must be positive and finite");
    const double alpha = ens.data().alpha;
    TailEstimate t;
    t.h = h;
    for (std::size_t p = 0; p < ens.n_paths(); ++p) {
        if (!ens.valid(p)) continue;
        ++t.trials;
        if (std::pow(ens.grid_sup(p), alpha - 1.0) > h) ++t.exceed;
    }
    t.probability = t.trials ? static_cast<double>(t.exceed) / static_cast<double>(t.trials) : 0.0;
    t.ci = wilson_interval(t.exceed, t.trials);
    return t;
}

LpCheck uniform_lp_check(const std::vector<std::pair<double, std::vector<double>>>& members, double p,
                         double alpha) {
    if (!(p > 1.0 && p < alpha)) throw DomainError("p", "p must satisfy 1 < p < alpha");
    if (members.empty()) throw DomainError("members", "at least one member is required");
    LpCheck out;
    out.p = p;
    double wsum = 0.0, wmean = 0.0;
    std::vector<double> idx, mom;
    for (const auto& [n, sups] : members) {
        std::vector<double> v(sups.size());
        for (std::size_t i = 0; i < sups.size(); ++i) v[i] = std::pow(sups[i], p);
        LpRow row;
        row.index = n;
        row.moment = mean_estimate(v);
        out.rows.push_back(row);
        idx.push_back(n);
        mom.push_back(row.moment.mean);
        const double se = row.moment.std_error;
        const double w = se > 0.0 ? 1.0 / (se * se) : 1.0;
        wsum += w;
        wmean += w * row.moment.mean;
    }
    out.common = wmean / wsum;
    out.passed = true;
    for (auto& row : out.rows) {
        row.within = std::abs(row.moment.mean - out.common) <= 3.0 * row.moment.std_error ||
                     row.moment.mean == out.common;
        out.passed = out.passed && row.within;
    }
    if (idx.size() >= 2) out.trend = ols_fit(idx, mom);
    return out;
}

LpCheck uniform_lp_check(const EnsembleData& data, const std::vector<std::size_t>& legs,
                         const std::vector<double>& index, double p) {
    if (legs.size() != index.size()) throw DomainError("index", "legs and index must have equal length");
    std::vector<std::pair<double, std::vector<double>>> members;
    for (std::size_t i = 0; i < legs.size(); ++i) {
        if (legs[i] >= data.n_legs()) throw DomainError("legs", "leg out of range");
        members.emplace_back(index[i], data.leg_sup(legs[i]));
    }
    return uniform_lp_check(members, p, data.alpha);
}

}  // namespace stablab
