// SPDX-License-Identifier: MIT
#include "stablab/measures.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "stablab/error.hpp"
#include "stablab/quadrature.hpp"

namespace stablab {

namespace {

using Gl10 = boost::math::quadrature::gauss<double, 10>;

template <class F>
double gauss_legendre(F&& f, double a, double b) {
    const auto& x = Gl10::abscissa();
    const auto& w = Gl10::weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * (f(c - h * x[i]) + f(c + h * x[i]));
    return s * h;
}

double window_radius(double scale, double rel_tol, double alpha) {
    return scale * std::max(10.0, std::pow(rel_tol, -1.0 / alpha));
}

QuadratureSpec space_spec(double rel_tol) {
    QuadratureSpec q;
    q.max_subdivisions = 20000;
    q.abs_tol = 1e-300;
    q.rel_tol = std::min(1e-8, rel_tol);
    return q;
}

// int F(y) dens(y) dy over [x0 - R, x0 + R], with breakpoints at
// x0 + scale {0, +-1/4, +-1/2, +-1, +-2, ...} and the given features.
template <class F, class D>
double window_integral(F&& f, D&& dens, double x0, double scale, double big_r, const std::vector<double>& features,
                       double rel_tol) {
    std::vector<double> pts{x0 - big_r, x0, x0 + big_r};
    for (double o = 0.25 * scale; o < big_r; o *= 2.0) {
        pts.push_back(x0 - o);
        pts.push_back(x0 + o);
    }
    for (double ft : features)
        if (ft > x0 - big_r && ft < x0 + big_r) pts.push_back(ft);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const auto r = integrate([&](double y) { return f(y) * dens(y); }, std::span<const double>(pts), space_spec(rel_tol));
    return require_converged(r, "spatial quadrature");
}

// Envelope tail beyond |y - x0| > R of a density with scale sc, for an
// integrand with value fr at the edge and growth exponent q.
double envelope_tail(const StableLaw& law, double fr, double sc, double big_r, double q = 0.0) {
    const double a = law.alpha();
    return fr * law.c_alpha() * std::pow(sc, a) * std::pow(big_r, -a) / (a - q);
}

std::vector<double> time_nodes(double T, const TimeGrid& grid, double alpha, const std::vector<double>& breaks) {
    if (grid.panels < 1) throw DomainError("time_grid.panels", "must be >= 1");
    const double gamma = grid.gamma > 0.0 ? grid.gamma : alpha;
    std::vector<double> s;
    for (int j = 0; j <= grid.panels; ++j) s.push_back(T * std::pow(static_cast<double>(j) / grid.panels, gamma));
    for (double b : breaks)
        if (b > 0.0 && b < T) s.push_back(b);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

// int_0^T int gap(s, y) p_s(y) dy ds in frozen modes.
template <class Gap>
double frozen_space_time(const CoefficientPair& pair, const DensityModel& model, double T, const TimeGrid& grid,
                         const SpaceOptions& opt, Gap&& gap) {
    const StableLaw& law = model.law;
    const double a = law.alpha();
    const auto nodes = time_nodes(T, grid, a, pair.time_breaks);
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
        total += gauss_legendre(
            [&](double s) {
                const double scale = opt.scale_factor * std::pow(s * model.sigma_sup, 1.0 / a);
                const double big_r = window_radius(scale, opt.rel_tol, a);
                auto f = [&](double y) { return gap(s, y); };
                auto dens = [&](double y) { return frozen_density(model, s, y); };
                double v = window_integral(f, dens, model.x0, scale, big_r, pair.features, opt.rel_tol);
                const double factor = model.mode == DensityMode::frozen_upper ? model.M : 1.0;
                for (double side : {-1.0, 1.0}) {
                    const double y = model.x0 + side * big_r;
                    const double sc = std::pow(s * model.sigma_ref(y), 1.0 / a);
                    v += factor * envelope_tail(law, gap(s, y), sc, big_r);
                }
                return v;
            },
            nodes[j], nodes[j + 1]);
    }
    return total;
}

template <class Gap>
double empirical_space_time(const DensityModel& model, Gap&& gap) {
    if (!model.empirical || !model.empirical->data) throw DomainError("model", "empirical mode needs a path sample");
    const EnsembleData& d = *model.empirical->data;
    const std::size_t leg = model.empirical->leg;
    std::vector<double> per_path;
    per_path.reserve(d.n_paths());
    for (std::size_t p = 0; p < d.n_paths(); ++p) {
        if (!d.valid(p)) continue;
        double acc = 0.0;
        for (std::size_t r = 0; r + 1 < d.n_records(); ++r)
            acc += gap(d.record_times[r], d.record(leg, p, r)) * (d.record_times[r + 1] - d.record_times[r]);
        per_path.push_back(acc);
    }
    return mean_estimate(per_path).mean;
}

void check_T(double T) {
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("T", "T must be positive and finite");
}

}  // namespace

double weighted_measure_density(const StableLaw& law, double x0, double sigma_x0, double t, double y) {
    if (!(t > 0.0)) throw DomainError("t", "t must be positive");
    if (!(sigma_x0 > 0.0)) throw DomainError("sigma_x0", "sigma(x0) must be positive");
    const double sc = std::pow(t * sigma_x0, 1.0 / law.alpha());
    return (*density_table(law))((y - x0) / sc) / sc;
}

double EmpiricalDensity::operator()(double t, double y) const {
    if (times.empty()) return 0.0;
    std::size_t best = 0;
    for (std::size_t r = 1; r < times.size(); ++r)
        if (std::abs(times[r] - t) < std::abs(times[best] - t)) best = r;
    const auto& e = edges[best];
    if (e.size() < 2 || y < e.front() || y >= e.back()) return 0.0;
    const auto it = std::upper_bound(e.begin(), e.end(), y);
    const std::size_t i = static_cast<std::size_t>(std::distance(e.begin(), it)) - 1;
    return density[best][i];
}

DensityModel make_frozen_model(const StableLaw& law, const CoefficientPair& pair, DensityMode mode, double M) {
    if (mode == DensityMode::empirical) throw DomainError("mode", "use make_empirical_model for empirical mode");
    if (!(M >= 1.0)) throw DomainError("M", "comparability constant M must be >= 1");
    DensityModel m;
    m.mode = mode;
    m.M = mode == DensityMode::frozen_upper ? M : 1.0;
    m.law = law;
    m.sigma_ref = pair.sigma;
    m.x0 = pair.x0;
    m.sigma_sup = pair.K > 0.0 ? std::max(pair.K, pair.sigma(pair.x0)) : pair.sigma(pair.x0);
    return m;
}

DensityModel make_empirical_model(const StableLaw& law, const CoefficientPair& pair,
                                  std::shared_ptr<const EnsembleData> data, std::size_t leg, int bins) {
    if (!data) throw DomainError("data", "empirical model needs simulated paths");
    if (leg >= data->n_legs()) throw DomainError("leg", "leg out of range");
    if (bins < 2) throw DomainError("bins", "need at least two bins");
    DensityModel m = make_frozen_model(law, pair);
    m.mode = DensityMode::empirical;
    auto emp = std::make_shared<EmpiricalDensity>();
    emp->data = data;
    emp->leg = leg;
    emp->times = data->record_times;
    std::vector<double> v;
    for (std::size_t r = 0; r < data->n_records(); ++r) {
        v.clear();
        for (std::size_t p = 0; p < data->n_paths(); ++p)
            if (data->valid(p)) v.push_back(data->record(leg, p, r));
        std::sort(v.begin(), v.end());
        emp->samples = v.size();
        std::vector<double> edges, dens;
        std::vector<std::size_t> counts;
        if (v.size() >= 100) {
            const double lo = v[v.size() / 100];
            const double hi = v[v.size() - 1 - v.size() / 100];
            if (hi > lo) {
                const double w = (hi - lo) / bins;
                for (int i = 0; i <= bins; ++i) edges.push_back(lo + w * i);
                counts.assign(static_cast<std::size_t>(bins), 0);
                for (double x : v) {
                    if (x < lo || x >= edges.back()) continue;
                    auto i = static_cast<std::size_t>((x - lo) / w);
                    counts[std::min(i, counts.size() - 1)]++;
                }
                for (auto c : counts) dens.push_back(static_cast<double>(c) / (static_cast<double>(v.size()) * w));
            }
        }
        emp->edges.push_back(std::move(edges));
        emp->density.push_back(std::move(dens));
        emp->counts.push_back(std::move(counts));
    }
    m.empirical = std::move(emp);
    return m;
}

double frozen_density(const DensityModel& model, double t, double y) {
    if (!(t > 0.0)) throw DomainError("t", "t must be positive");
    if (model.mode == DensityMode::empirical) {
        if (!model.empirical) throw DomainError("model", "empirical mode needs a path sample");
        return (*model.empirical)(t, y);
    }
    const double s = model.sigma_ref(y);
    if (!(s > 0.0)) throw DomainError("sigma", "sigma must be positive for the frozen density");
    const double sc = std::pow(t * s, 1.0 / model.law.alpha());
    const double v = (*density_table(model.law))((y - model.x0) / sc) / sc;
    return model.mode == DensityMode::frozen_upper ? model.M * v : v;
}

double frozen_mass(const DensityModel& model, double t, double rel_tol) {
    if (model.mode == DensityMode::empirical) {
        if (!model.empirical) throw DomainError("model", "empirical mode needs a path sample");
        return empirical_space_time(model, [&](double, double) { return 1.0; }) / model.empirical->times.back();
    }
    const double a = model.law.alpha();
    const double scale = std::pow(t * model.sigma_sup, 1.0 / a);
    const double big_r = window_radius(scale, rel_tol, a);
    auto one = [](double) { return 1.0; };
    auto dens = [&](double y) { return frozen_density(model, t, y); };
    double v = window_integral(one, dens, model.x0, scale, big_r, {}, rel_tol);
    const double factor = model.mode == DensityMode::frozen_upper ? model.M : 1.0;
    for (double side : {-1.0, 1.0}) {
        const double sc = std::pow(t * model.sigma_ref(model.x0 + side * big_r), 1.0 / a);
        v += factor * envelope_tail(model.law, 1.0, sc, big_r);
    }
    return v;
}

double weighted_norm(const std::function<double(double)>& f, double p, const StableLaw& law, double x0,
                     double sigma_x0, double t, const SpaceOptions& opt) {
    if (!(p > 0.0)) throw DomainError("p", "p must be positive");
    if (!(t > 0.0)) throw DomainError("t", "t must be positive");
    if (!(sigma_x0 > 0.0)) throw DomainError("sigma_x0", "sigma(x0) must be positive");
    const double a = law.alpha();
    const double scale = opt.scale_factor * std::pow(t * sigma_x0, 1.0 / a);
    const double big_r = window_radius(scale, opt.rel_tol, a);

    // Growth exponent of |f| from the last decade before and after the window edge.
    double total_tail = 0.0;
    for (double side : {-1.0, 1.0}) {
        const double r1 = big_r, r2 = 10.0 * big_r, r3 = 100.0 * big_r;
        const double f1 = std::abs(f(x0 + side * r1)), f2 = std::abs(f(x0 + side * r2)),
                     f3 = std::abs(f(x0 + side * r3));
        double q = 0.0;
        if (f2 > 0.0 && f3 > 0.0) q = std::max(0.0, std::log10(f3 / f2));
        if (!std::isfinite(f1) || !std::isfinite(f3) || q * p >= a - 1e-9)
            throw DomainError("f", "|f|^p grows too fast for the stable tail: fitted growth " + std::to_string(q) +
                                       " times p is not below alpha");
        total_tail += envelope_tail(law, std::pow(f1, p), scale, big_r, q * p);
        (void)r2;
    }
    auto g = [&](double y) { return std::pow(std::abs(f(y)), p); };
    auto dens = [&](double y) { return weighted_measure_density(law, x0, sigma_x0, t, y); };
    const double body = window_integral(g, dens, x0, scale, big_r, {}, opt.rel_tol);
    return std::pow(body + total_tail, 1.0 / p);
}

double distance_B(const CoefficientPair& pair, const DensityModel& model, double T, const TimeGrid& grid,
                  const SpaceOptions& opt) {
    check_T(T);
    auto gap = [&](double s, double y) { return std::abs(pair.b(y) - pair.b_tilde(s, y)); };
    if (model.mode == DensityMode::empirical) return empirical_space_time(model, gap);
    return frozen_space_time(pair, model, T, grid, opt, gap);
}

double distance_S(const CoefficientPair& pair, const DensityModel& model, double T, const TimeGrid& grid,
                  const SpaceOptions& opt) {
    check_T(T);
    const double a = model.law.alpha();
    auto gap = [&](double s, double y) { return std::pow(std::abs(pair.sigma(y) - pair.sigma_tilde(s, y)), a); };
    const double v = model.mode == DensityMode::empirical ? empirical_space_time(model, gap)
                                                          : frozen_space_time(pair, model, T, grid, opt, gap);
    return std::pow(v, 1.0 / a);
}

namespace {

template <class Gap>
SupDistance sup_distance(const CoefficientPair& pair, double T, const SupOptions& opt, double power, Gap&& gap) {
    check_T(T);
    if (opt.points < 2) throw DomainError("sup.points", "need at least two window points");
    if (!(opt.half_width > 0.0)) throw DomainError("sup.half_width", "must be positive");
    if (opt.time_panels < 1) throw DomainError("sup.time_panels", "must be >= 1");
    SupDistance out;
    out.window_lo = pair.x0 - opt.half_width;
    out.window_hi = pair.x0 + opt.half_width;
    out.points = opt.points;
    out.variant = opt.variant;
    auto space_sup = [&](double s) {
        double m = 0.0;
        for (std::size_t i = 0; i < opt.points; ++i) {
            const double y = out.window_lo + (out.window_hi - out.window_lo) * static_cast<double>(i) /
                                                 static_cast<double>(opt.points - 1);
            m = std::max(m, gap(s, y));
        }
        for (double ft : pair.features)
            if (ft >= out.window_lo && ft <= out.window_hi) m = std::max(m, gap(s, ft));
        return m;
    };
    std::vector<double> nodes;
    for (int j = 0; j <= opt.time_panels; ++j) nodes.push_back(T * j / opt.time_panels);
    for (double b : pair.time_breaks)
        if (b > 0.0 && b < T) nodes.push_back(b);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    if (opt.variant == SupVariant::time_sup) {
        double m = 0.0;
        for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
            m = std::max(m, space_sup(nodes[j]));
            m = std::max(m, space_sup(0.5 * (nodes[j] + nodes[j + 1])));
        }
        // Right end: last instant inside [0, T].
        m = std::max(m, space_sup(std::nextafter(T, 0.0)));
        out.value = m;
        return out;
    }
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j)
        total += gauss_legendre([&](double s) { return std::pow(space_sup(s), power); }, nodes[j], nodes[j + 1]);
    out.value = std::pow(total, 1.0 / power);
    return out;
}

}  // namespace

SupDistance distance_B_sup(const CoefficientPair& pair, double T, const SupOptions& opt) {
    return sup_distance(pair, T, opt, 1.0, [&](double s, double y) { return std::abs(pair.b(y) - pair.b_tilde(s, y)); });
}

SupDistance distance_S_sup(const CoefficientPair& pair, double alpha, double T, const SupOptions& opt) {
    return sup_distance(pair, T, opt, alpha,
                        [&](double s, double y) { return std::abs(pair.sigma(y) - pair.sigma_tilde(s, y)); });
}

DensityBand fit_density_band(const DensityModel& frozen, const EmpiricalDensity& emp, std::size_t min_count) {
    if (frozen.mode == DensityMode::empirical) throw DomainError("model", "band needs a frozen reference model");
    DensityModel plain = frozen;
    plain.mode = DensityMode::frozen_plain;
    plain.M = 1.0;
    DensityBand band;
    band.m = std::numeric_limits<double>::infinity();
    band.M = 0.0;
    for (std::size_t r = 0; r < emp.times.size(); ++r) {
        const double t = emp.times[r];
        if (!(t > 0.0) || emp.edges[r].size() < 2) continue;
        for (std::size_t i = 0; i + 1 < emp.edges[r].size(); ++i) {
            if (emp.counts[r][i] < min_count) continue;
            const double lo = emp.edges[r][i], hi = emp.edges[r][i + 1];
            const double ref = gauss_legendre([&](double y) { return frozen_density(plain, t, y); }, lo, hi) / (hi - lo);
            if (!(ref > 0.0)) continue;
            const double ratio = emp.density[r][i] / ref;
            band.m = std::min(band.m, ratio);
            band.M = std::max(band.M, ratio);
            ++band.bins_used;
        }
    }
    if (band.bins_used == 0) throw DomainError("empirical", "no histogram bin has enough samples to fit a band");
    return band;
}

}  // namespace stablab
