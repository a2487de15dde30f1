// SPDX-License-Identifier: MIT
#include "stablab/rate_lab.hpp"

#include <algorithm>
#include <cmath>

#include "stablab/error.hpp"

namespace stablab {

RateBoundSpec make_rate_spec(double alpha, double eta_tilde, DistanceFlavor flavor, double C_fit) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("alpha", "alpha must lie in (1, 2)");
    if (!(eta_tilde >= 1.0 / alpha - 1e-12 && eta_tilde <= 1.0))
        throw DomainError("eta_tilde", "eta_tilde must lie in [1/alpha, 1]");
    if (!(C_fit >= 0.0) || !std::isfinite(C_fit)) throw DomainError("C_fit", "C_fit must be finite and >= 0");
    RateBoundSpec s;
    s.alpha = alpha;
    s.eta_tilde = eta_tilde;
    s.branch = std::abs(eta_tilde - 1.0 / alpha) < 1e-12 ? RateBranch::log : RateBranch::holder;
    s.flavor = flavor;
    s.C_fit = C_fit;
    return s;
}

RateExponents rate_exponents(const RateBoundSpec& spec) {
    if (spec.branch == RateBranch::log) return {0.0, 0.0};
    const double a = spec.alpha, e = spec.eta_tilde;
    return {(a * e - 1.0) / (a * e - a + 1.0), a - 1.0 / e};
}

double distance_term(const RateBoundSpec& spec, double B, double S) {
    if (!(B >= 0.0)) throw DomainError("B", "B must be >= 0");
    if (!(S >= 0.0)) throw DomainError("S", "S must be >= 0");
    if (B >= 1.0) throw AssumptionViolation("B", "assumption B < 1 violated (B = " + std::to_string(B) + ")");
    if (S >= 1.0) throw AssumptionViolation("S", "assumption S < 1 violated (S = " + std::to_string(S) + ")");
    if (spec.branch == RateBranch::log) {
        const double m = std::max(B, S);
        return m > 0.0 ? 1.0 / std::log(1.0 / m) : 0.0;
    }
    const auto e = rate_exponents(spec);
    return std::max(B > 0.0 ? std::pow(B, e.e_B) : 0.0, S > 0.0 ? std::pow(S, e.e_S) : 0.0);
}

double theoretical_bound(const RateBoundSpec& spec, double x0_gap, double B, double S) {
    if (!(x0_gap >= 0.0)) throw DomainError("x0_gap", "x0_gap must be >= 0");
    const double gap = x0_gap > 0.0 ? std::pow(x0_gap, spec.alpha - 1.0) : 0.0;
    return spec.C_fit * (gap + distance_term(spec, B, S));
}

double tail_bound(const RateBoundSpec& spec, double x0_gap, double B, double S, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("h", "h must be positive and finite");
    return theoretical_bound(spec, x0_gap, B, S) / h;
}

double PerturbationFamily::size(int n) const { return scale * std::ldexp(1.0, -n); }

PairSpec PerturbationFamily::member_spec(int n) const {
    PairSpec s = base;
    const double sz = size(n);
    switch (kind) {
        case FamilyKind::initial_value:
            s.x0_gap = sz;
            break;
        case FamilyKind::drift_bump:
            s.perturbation.drift_shape = ShapeKind::bump;
            s.perturbation.drift_amplitude = sz;
            break;
        case FamilyKind::jump_bump:
            s.perturbation.jump_shape = ShapeKind::bump;
            s.perturbation.jump_amplitude = sz;
            break;
        case FamilyKind::jump_holder:
            s.perturbation.jump_shape = ShapeKind::holder;
            s.perturbation.jump_amplitude = sz;
            break;
        case FamilyKind::mollification:
            s.perturbation.drift_shape = ShapeKind::mollify;
            s.perturbation.drift_width = sz;
            break;
    }
    return s;
}

CoefficientPair PerturbationFamily::member(int n, double alpha) const { return make_pair(member_spec(n), alpha); }

const char* to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::initial_value: return "initial_value";
        case FamilyKind::drift_bump: return "drift_bump";
        case FamilyKind::jump_bump: return "jump_bump";
        case FamilyKind::jump_holder: return "jump_holder";
        case FamilyKind::mollification: return "mollification";
    }
    return "?";
}

namespace {

LinearFit log_fit(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() < 2) return {};
    try {
        return ols_fit(lx, ly);
    } catch (const DomainError&) {
        return {};
    }
}

}  // namespace

SweepResult run_sweep(const PerturbationFamily& family, const SimConfig& config, const StableLaw& law,
                      const RateBoundSpec& spec, const SweepOptions& options) {
    if (family.indices.empty()) throw DomainError("family", "perturbation family has no members");
    const double a = law.alpha();
    std::vector<int> idx = family.indices;
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());

    std::vector<CoefficientPair> members;
    for (int n : idx) members.push_back(family.member(n, a));

    std::vector<Leg> legs{baseline_leg(members.front())};
    std::vector<LegPair> pairs;
    for (std::size_t i = 0; i < members.size(); ++i) {
        Leg l = perturbed_leg(members[i]);
        l.label = "n=" + std::to_string(idx[i]);
        legs.push_back(std::move(l));
        pairs.push_back({0, i + 1});
    }
    auto data = simulate_legs(config, legs, law, pairs);

    SweepResult res;
    res.digest = data->leg_digest[0];
    RateBoundSpec unit = spec;
    unit.C_fit = 1.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& pair = members[i];
        SweepRow row;
        row.n = idx[i];
        row.size = family.size(idx[i]);
        row.x0_gap = std::abs(pair.x0_tilde - pair.x0);
        if (spec.flavor == DistanceFlavor::weighted) {
            const auto model = make_frozen_model(law, pair);
            row.B = distance_B(pair, model, config.T, options.time, options.space);
            row.S = distance_S(pair, model, config.T, options.time, options.space);
        } else {
            row.B = distance_B_sup(pair, config.T, options.sup).value;
            row.S = distance_S_sup(pair, a, config.T, options.sup).value;
        }
        CoupledPathEnsemble ens(data, 0, i + 1, i);
        const auto curve = distance_moment_curve(ens, a - 1.0);
        row.D = curve.sup_mean;
        row.D_se = curve.sup_std_error;
        try {
            row.bound = theoretical_bound(unit, row.x0_gap, row.B, row.S);
        } catch (const AssumptionViolation& e) {
            row.violation = true;
            row.violation_reason = e.what();
            row.bound = std::nan("");
        }
        for (double h : options.h_values) row.tails.push_back(tail_probability(ens, h));
        res.rows.push_back(std::move(row));
    }

    // One-point calibration.
    std::size_t cal = 0;
    if (options.calibrate_index >= 0) {
        auto it = std::find(idx.begin(), idx.end(), options.calibrate_index);
        if (it == idx.end()) throw DomainError("calibrate_index", "calibration member is not in the family");
        cal = static_cast<std::size_t>(std::distance(idx.begin(), it));
    }
    const auto& c = res.rows[cal];
    res.calibrated_n = c.n;
    res.C_fit = (!c.violation && c.bound > 0.0) ? c.D / c.bound : std::nan("");
    res.all_within = std::isfinite(res.C_fit);
    for (auto& row : res.rows) {
        if (row.violation || !std::isfinite(res.C_fit)) {
            row.within = false;
            row.fitted_bound = std::nan("");
            continue;
        }
        row.fitted_bound = res.C_fit * row.bound;
        row.within = row.D - 2.0 * row.D_se <= row.fitted_bound;
        res.all_within = res.all_within && row.within;
    }

    std::vector<double> sizes, Ds, bounds, Ss, Bs;
    for (const auto& row : res.rows) {
        sizes.push_back(row.size);
        Ds.push_back(row.D);
        bounds.push_back(row.bound);
        Ss.push_back(row.S);
        Bs.push_back(row.B);
    }
    res.slope_vs_bound = log_fit(bounds, Ds);
    res.slope_vs_size = log_fit(sizes, Ds);
    res.S_slope_vs_size = log_fit(sizes, Ss);
    res.B_slope_vs_size = log_fit(sizes, Bs);
    return res;
}

TailCheck tail_shape_check(const std::vector<TailEstimate>& tails, double numerator, double calibrate_h) {
    if (!(numerator > 0.0)) throw DomainError("numerator", "bound numerator must be positive");
    auto it = std::find_if(tails.begin(), tails.end(), [&](const TailEstimate& t) { return t.h == calibrate_h; });
    if (it == tails.end()) throw DomainError("calibrate_h", "calibration h is not among the tail rows");
    TailCheck out;
    out.numerator = numerator;
    out.calibrate_h = calibrate_h;
    out.C_fit = it->h * it->probability / numerator;
    out.passed = true;
    for (const auto& t : tails) {
        TailCheckRow r;
        r.tail = t;
        r.lhs = t.h * t.probability;
        r.lhs_lo = t.h * t.ci.lo;
        r.rhs = out.C_fit * numerator;
        r.passed = r.lhs_lo <= r.rhs;
        out.passed = out.passed && r.passed;
        out.rows.push_back(r);
    }
    return out;
}

ConvergenceReport convergence_experiment(const PerturbationFamily& family, const SimConfig& config,
                                         const StableLaw& law, double p) {
    if (family.indices.size() < 2) throw DomainError("family", "convergence needs at least two members");
    const double a = law.alpha();
    std::vector<int> idx = family.indices;
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());

    std::vector<Leg> legs;
    CoefficientPair first = family.member(idx.front(), a);
    for (int n : idx) {
        Leg l = perturbed_leg(family.member(n, a));
        l.label = "n=" + std::to_string(n);
        legs.push_back(std::move(l));
    }
    Leg limit = baseline_leg(first);
    limit.label = "limit";
    legs.push_back(std::move(limit));
    const std::size_t lim = legs.size() - 1;
    std::vector<LegPair> pairs;
    for (std::size_t i = 0; i + 1 < idx.size(); ++i) pairs.push_back({i, i + 1});
    pairs.push_back({idx.size() - 1, lim});
    auto data = simulate_legs(config, legs, law, pairs);

    ConvergenceReport rep;
    rep.cauchy_decreasing = true;
    for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
        CoupledPathEnsemble ens(data, i, i + 1, i);
        const auto c = distance_moment_curve(ens, a - 1.0);
        ConvergenceRow row;
        row.n = idx[i];
        row.m = idx[i + 1];
        row.D = c.sup_mean;
        row.D_se = c.sup_std_error;
        if (!rep.rows.empty()) {
            const auto& prev = rep.rows.back();
            row.monotone = row.D <= prev.D + 2.0 * std::hypot(prev.D_se, row.D_se);
        }
        rep.cauchy_decreasing = rep.cauchy_decreasing && row.monotone;
        rep.rows.push_back(row);
    }
    {
        CoupledPathEnsemble ens(data, idx.size() - 1, lim, pairs.size() - 1);
        const auto c = distance_moment_curve(ens, a - 1.0);
        rep.limit_residual = c.sup_mean;
        rep.limit_residual_se = c.sup_std_error;
    }
    std::vector<std::size_t> member_legs;
    std::vector<double> index;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        member_legs.push_back(i);
        index.push_back(idx[i]);
    }
    rep.lp = uniform_lp_check(*data, member_legs, index, p);
    rep.passed = rep.cauchy_decreasing && rep.lp.passed;
    return rep;
}

}  // namespace stablab
