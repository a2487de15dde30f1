// SPDX-License-Identifier: MIT
#include "stablab/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "stablab/error.hpp"

namespace stablab {

namespace {

constexpr double kBumpLipschitz = 1.5396007178390020;  // 8 / (3 sqrt 3)

double bump(double z) {
    if (std::abs(z) >= 1.0) return 0.0;
    const double w = 1.0 - z * z;
    return w * w;
}

double holder_shape(double x, double center, double eta) { return std::min(std::pow(std::abs(x - center), eta), 1.0); }

double drift_lipschitz(const DriftSpec& d) { return d.kind == DriftKind::zero ? 0.0 : std::abs(d.beta); }

double jump_sup(const JumpSpec& j) { return j.s0 + (j.kind == JumpKind::cosine ? std::abs(j.s1) : 0.0); }
double jump_inf(const JumpSpec& j) { return j.s0 - (j.kind == JumpKind::cosine ? std::abs(j.s1) : 0.0); }
double jump_lipschitz(const JumpSpec& j) {
    return j.kind == JumpKind::cosine ? std::abs(j.s1) * std::abs(j.omega) : 0.0;
}

// Holder-eta constant of a function with Lipschitz constant lip and oscillation osc:
// min(lip d, osc) <= lip^eta osc^{1-eta} d^eta.
double holder_from_lipschitz(double lip, double osc, double eta) {
    if (lip == 0.0 || osc == 0.0) return 0.0;
    return std::pow(lip, eta) * std::pow(osc, 1.0 - eta);
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(name, std::string(name) + " must be positive and finite");
}

}  // namespace

double smoothed_abs(double x, double h) {
    if (h <= 0.0) return std::abs(x);
    const double s = x / h;
    if (std::abs(s) >= 1.0) return std::abs(x);
    const double s2 = s * s;
    return h * (0.375 + 0.75 * s2 - 0.125 * s2 * s2);
}

double TimeProfile::operator()(double t) const {
    switch (kind) {
        case TimeProfileKind::constant:
            return 1.0;
        case TimeProfileKind::exp_decay:
            return std::exp(-rate * t);
        case TimeProfileKind::window:
            return (t >= t0 && t < t1) ? 1.0 : 0.0;
    }
    return 1.0;
}

std::function<double(double)> make_drift(const DriftSpec& d, double mollify_h) {
    const double beta = d.beta, c = d.center;
    switch (d.kind) {
        case DriftKind::zero:
            return [](double) { return 0.0; };
        case DriftKind::linear:
            return [beta, c](double x) { return -beta * (x - c); };
        case DriftKind::tanh:
            return [beta, c](double x) { return -beta * std::tanh(x - c); };
        case DriftKind::kinked:
            return [beta, c, h = mollify_h](double x) {
                const double z = x - c;
                return beta * (-0.5 - smoothed_abs(z, h) + 0.5 * (smoothed_abs(z - 1.0, h) + smoothed_abs(z + 1.0, h)));
            };
    }
    return [](double) { return 0.0; };
}

std::function<double(double)> make_jump(const JumpSpec& j) {
    if (j.kind == JumpKind::constant) return [s = j.s0](double) { return s; };
    return [s0 = j.s0, s1 = j.s1, w = j.omega](double x) { return s0 + s1 * std::cos(w * x); };
}

CoefficientPair make_pair(const PairSpec& spec, double alpha) {
    const auto& d = spec.drift;
    const auto& j = spec.jump;
    const auto& p = spec.perturbation;
    if (!std::isfinite(d.beta)) throw DomainError("drift.beta", "must be finite");
    require_positive(j.s0, "jump.s0");
    if (!(jump_inf(j) > 0.0)) throw DomainError("jump.s1", "baseline sigma must stay positive (need s0 > |s1|)");
    if (!(p.eta_tilde >= 1.0 / alpha - 1e-12 && p.eta_tilde <= 1.0))
        throw DomainError("perturbation.eta_tilde", "eta_tilde must lie in [1/alpha, 1]");
    if (p.drift_shape == ShapeKind::holder) throw DomainError("perturbation.drift_shape", "holder shape is jump-only");
    if (p.jump_shape == ShapeKind::mollify) throw DomainError("perturbation.jump_shape", "mollify shape is drift-only");
    if (p.drift_shape == ShapeKind::mollify && d.kind != DriftKind::kinked)
        throw DomainError("perturbation.drift_shape", "mollify applies to the kinked drift only");
    if (p.drift_shape == ShapeKind::bump || p.drift_shape == ShapeKind::mollify)
        require_positive(p.drift_width, "perturbation.drift_width");
    if (p.jump_shape == ShapeKind::bump) require_positive(p.jump_width, "perturbation.jump_width");
    if (p.profile.kind == TimeProfileKind::exp_decay && !(p.profile.rate >= 0.0))
        throw DomainError("perturbation.profile.rate", "must be >= 0");
    if (p.profile.kind == TimeProfileKind::window && !(p.profile.t1 > p.profile.t0))
        throw DomainError("perturbation.profile", "window needs t1 > t0");
    if (!std::isfinite(spec.x0) || !std::isfinite(spec.x0_gap)) throw DomainError("x0", "must be finite");

    CoefficientPair out;
    out.b = make_drift(d);
    out.sigma = make_jump(j);
    out.x0 = spec.x0;
    out.x0_tilde = spec.x0 + spec.x0_gap;
    const TimeProfile prof = p.profile;

    // Drift perturbation
    std::function<double(double)> drift_shape;
    double drift_shape_lip = 0.0;
    std::function<double(double)> base_tilde = out.b;
    const double ad = p.drift_amplitude;
    switch (p.drift_shape) {
        case ShapeKind::none:
        case ShapeKind::holder:
            break;
        case ShapeKind::shift:
            drift_shape = [](double) { return 1.0; };
            break;
        case ShapeKind::bump:
            drift_shape = [c = p.drift_center, w = p.drift_width](double x) { return bump((x - c) / w); };
            drift_shape_lip = kBumpLipschitz / p.drift_width;
            break;
        case ShapeKind::mollify:
            base_tilde = make_drift(d, p.drift_width);
            break;
    }
    const bool drift_perturbed =
        p.drift_shape == ShapeKind::mollify || (drift_shape && ad != 0.0);
    if (drift_shape && ad != 0.0) {
        out.b_tilde = [base_tilde, drift_shape, ad, prof](double t, double x) {
            return base_tilde(x) + ad * prof(t) * drift_shape(x);
        };
    } else {
        out.b_tilde = [base_tilde](double, double x) { return base_tilde(x); };
    }

    // Jump perturbation
    std::function<double(double)> jump_shape;
    double jump_shape_holder = 0.0;
    const double aj = p.jump_amplitude;
    const double eta_t = p.eta_tilde;
    switch (p.jump_shape) {
        case ShapeKind::none:
        case ShapeKind::mollify:
            break;
        case ShapeKind::shift:
            jump_shape = [](double) { return 1.0; };
            break;
        case ShapeKind::bump:
            jump_shape = [c = p.jump_center, w = p.jump_width](double x) { return bump((x - c) / w); };
            jump_shape_holder = holder_from_lipschitz(kBumpLipschitz / p.jump_width, 1.0, eta_t);
            break;
        case ShapeKind::holder:
            jump_shape = [c = p.jump_center, eta_t](double x) { return holder_shape(x, c, eta_t); };
            jump_shape_holder = 1.0;
            break;
    }
    const bool jump_perturbed = jump_shape && aj != 0.0;
    if (jump_perturbed) {
        out.sigma_tilde = [s = out.sigma, jump_shape, aj, prof](double t, double x) {
            return s(x) + aj * prof(t) * jump_shape(x);
        };
    } else {
        out.sigma_tilde = [s = out.sigma](double, double x) { return s(x); };
    }

    // Regularity metadata
    const double lip_b = drift_lipschitz(d);
    const double lip_s = jump_lipschitz(j);
    const double sup_s = jump_sup(j);
    out.K = std::max({lip_b, sup_s, lip_s});
    out.k = jump_inf(j);
    out.eta = 1.0;
    out.eta_tilde = eta_t;
    const double abs_ad = std::abs(ad), abs_aj = std::abs(aj);
    out.f_b_tilde = [lip_b, abs_ad, drift_shape_lip, prof](double t) {
        return lip_b + abs_ad * std::abs(prof(t)) * drift_shape_lip;
    };
    const double base_holder = holder_from_lipschitz(lip_s, 2.0 * std::abs(j.kind == JumpKind::cosine ? j.s1 : 0.0), eta_t);
    const double jump_h = jump_perturbed ? jump_shape_holder : 0.0;
    out.f_sigma_tilde = [base_holder, abs_aj, jump_h, prof](double t) {
        return base_holder + abs_aj * std::abs(prof(t)) * jump_h;
    };
    const double jump_sup_shape = jump_perturbed ? 1.0 : 0.0;
    out.g_sigma_tilde = [sup_s, abs_aj, jump_sup_shape, prof](double t) {
        return sup_s + abs_aj * std::abs(prof(t)) * jump_sup_shape;
    };

    // Quadrature hints
    if (d.kind == DriftKind::kinked) {
        for (double o : {-1.0, 0.0, 1.0}) {
            out.features.push_back(d.center + o);
            if (p.drift_shape == ShapeKind::mollify) {
                out.features.push_back(d.center + o - p.drift_width);
                out.features.push_back(d.center + o + p.drift_width);
            }
        }
    }
    if (p.drift_shape == ShapeKind::bump)
        for (double o : {-1.0, 0.0, 1.0}) out.features.push_back(p.drift_center + o * p.drift_width);
    if (p.jump_shape == ShapeKind::bump)
        for (double o : {-1.0, 0.0, 1.0}) out.features.push_back(p.jump_center + o * p.jump_width);
    if (p.jump_shape == ShapeKind::holder)
        for (double o : {-1.0, 0.0, 1.0}) out.features.push_back(p.jump_center + o);
    std::sort(out.features.begin(), out.features.end());
    out.features.erase(std::unique(out.features.begin(), out.features.end()), out.features.end());
    if (p.profile.kind == TimeProfileKind::window) {
        out.time_breaks.push_back(p.profile.t0);
        if (std::isfinite(p.profile.t1)) out.time_breaks.push_back(p.profile.t1);
    }
    out.unperturbed = !drift_perturbed && !jump_perturbed && spec.x0_gap == 0.0;

    std::ostringstream os;
    os << "drift=" << to_string(d.kind) << " jump=" << to_string(j.kind)
       << " drift_perturbation=" << to_string(p.drift_shape) << " jump_perturbation=" << to_string(p.jump_shape)
       << " profile=" << to_string(p.profile.kind);
    out.description = os.str();
    return out;
}

PairValidation validate_pair(const CoefficientPair& pair, double alpha, double T, std::uint64_t seed) {
    PairValidation v;
    auto fail = [&](std::string s) {
        v.ok = false;
        v.problems.push_back(std::move(s));
    };
    constexpr double tol = 1e-9;
    if (!(pair.eta_tilde >= 1.0 / alpha - 1e-12 && pair.eta_tilde <= 1.0)) fail("eta_tilde outside [1/alpha, 1]");
    for (int i = 0; i <= 2000; ++i) {
        const double x = pair.x0 - 10.0 + 20.0 * i / 2000.0;
        const double s = pair.sigma(x);
        if (!(s >= pair.k * (1 - tol) && s <= pair.K * (1 + tol))) {
            fail("sigma(" + std::to_string(x) + ") outside [k, K]");
            break;
        }
    }
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> ux(pair.x0 - 10.0, pair.x0 + 10.0), ut(0.0, T);
    bool lip_bad = false, hol_bad = false, sup_bad = false;
    for (int i = 0; i < 4000; ++i) {
        const double t = ut(gen), x = ux(gen);
        // Mix long and short separations so both regimes of the bounds are probed.
        const double y = (i % 2 == 0) ? ux(gen) : x + 1e-3 * (ux(gen) - pair.x0);
        if (x == y) continue;
        const double db = std::abs(pair.b_tilde(t, x) - pair.b_tilde(t, y));
        if (!lip_bad && db > pair.f_b_tilde(t) * std::abs(x - y) * (1 + tol) + 1e-12) {
            lip_bad = true;
            fail("drift Lipschitz factor f_b_tilde violated");
        }
        const double ds = std::abs(pair.sigma_tilde(t, x) - pair.sigma_tilde(t, y));
        if (!hol_bad && ds > pair.f_sigma_tilde(t) * std::pow(std::abs(x - y), pair.eta_tilde) * (1 + tol) + 1e-12) {
            hol_bad = true;
            fail("jump Holder factor f_sigma_tilde violated");
        }
        if (!sup_bad && std::abs(pair.sigma_tilde(t, x)) > pair.g_sigma_tilde(t) * (1 + tol)) {
            sup_bad = true;
            fail("jump magnitude envelope g_sigma_tilde violated");
        }
    }
    return v;
}

const char* to_string(DriftKind k) {
    switch (k) {
        case DriftKind::zero: return "zero";
        case DriftKind::linear: return "linear";
        case DriftKind::tanh: return "tanh";
        case DriftKind::kinked: return "kinked";
    }
    return "?";
}
const char* to_string(JumpKind k) { return k == JumpKind::constant ? "constant" : "cosine"; }
const char* to_string(ShapeKind k) {
    switch (k) {
        case ShapeKind::none: return "none";
        case ShapeKind::shift: return "shift";
        case ShapeKind::bump: return "bump";
        case ShapeKind::holder: return "holder";
        case ShapeKind::mollify: return "mollify";
    }
    return "?";
}
const char* to_string(TimeProfileKind k) {
    switch (k) {
        case TimeProfileKind::constant: return "constant";
        case TimeProfileKind::exp_decay: return "exp_decay";
        case TimeProfileKind::window: return "window";
    }
    return "?";
}

}  // namespace stablab
