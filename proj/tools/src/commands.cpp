// SPDX-License-Identifier: MIT
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include "stablab/error.hpp"
#include "stablab/measures.hpp"
#include "stablab/mollifier.hpp"
#include "stablab/rate_lab.hpp"
#include "stablab/simulator.hpp"
#include "stablab/stable_law.hpp"

namespace stablab::cli {

namespace {

constexpr std::size_t kMaxDumpedPaths = 100;

std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> xs(g.points);
    for (std::size_t i = 0; i < g.points; ++i)
        xs[i] = g.lo + (g.hi - g.lo) * static_cast<double>(i) / static_cast<double>(g.points - 1);
    return xs;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Series series(std::string name, std::string xl, std::string yl) {
    Series s;
    s.name = std::move(name);
    s.x_label = std::move(xl);
    s.y_label = std::move(yl);
    return s;
}

SimConfig sim_config(const ExperimentConfig& cfg, const RunOptions& opt) {
    SimConfig c = *cfg.sim;
    c.threads = opt.threads;
    return c;
}

PerturbationFamily family_of(const ExperimentConfig& cfg) {
    PerturbationFamily f;
    f.kind = cfg.sweep->family;
    f.base = *cfg.pair;
    f.scale = cfg.sweep->scale;
    for (int n = cfg.sweep->first; n <= cfg.sweep->last; ++n) f.indices.push_back(n);
    return f;
}

// Komatsu identity over theta with a given constant; value is the worst
// residual / tolerance ratio.
Check komatsu_row(const std::vector<KomatsuResult>& base, double constant, const std::string& name,
                  const std::string& anchor) {
    double worst = 0.0;
    double worst_theta = 0.0;
    for (const auto& k : base) {
        const double target = constant * k.psi_value;
        const double residual = std::abs(k.generator_value - target);
        const double tol = k.psi_value > 0.0 ? 1e-2 * std::abs(target) : 1e-4;
        const double ratio = residual / tol;
        if (!(ratio <= worst)) {
            worst = ratio;
            worst_theta = k.theta;
        }
    }
    const bool ok = worst <= 1.0;
    return {name, anchor, worst, 1.0, ok,
            "constant " + fmt(constant) + "; worst theta " + fmt(worst_theta) +
                "; tolerance 1e-2 relative on the support, 1e-4 absolute off it"};
}

RunResult run_certify_mollifier(const ExperimentConfig& cfg) {
    const auto& ms = *cfg.mollifier;
    const auto law = make_stable_law(cfg.alpha);
    const auto s = make_smoothed_distance(build_mollifier(cfg.alpha, ms.eps, ms.delta));
    const auto& m = s.mollifier();
    const GridSpec g = cfg.grid.value_or(GridSpec{-5.0, 5.0, 2000});
    const auto xs = grid_points(g);

    RunResult r;
    r.report = certify_mollifier(s, xs, CertifyOptions{ms.tol, ms.exact});
    r.report.subject = "certify-mollifier";

    std::vector<double> thetas = ms.komatsu_theta;
    if (thetas.empty()) {
        const double a = m.support_lo(), b = m.support_hi();
        for (int k = 0; k < 8; ++k) thetas.push_back(a + (b - a) * (k + 0.5) / 8.0);
        thetas.insert(thetas.end(), {-b, 0.5 * a, 2.0 * b, 5.0 * b});
    }
    std::vector<KomatsuResult> kom;
    for (double t : thetas) kom.push_back(komatsu_check(s, law, t, law.big_C_alpha(), ms.exact));
    r.report.add(komatsu_row(kom, law.big_C_alpha(), "komatsu_identity",
                             "L u(theta) = C_alpha psi(theta), C_alpha = -2 alpha sin(alpha pi/2) cot(alpha pi/2) "
                             "Gamma(alpha+1)"));
    r.report.add(komatsu_row(kom, law.generator_mass(), "komatsu_identity_mass",
                             "L u(theta) = m_alpha psi(theta), m_alpha = -2 Gamma(alpha) cos(alpha pi/2)"));

    r.results.columns = {"x", "psi", "u", "u_prime", "u_second", "u_prime_bound"};
    auto s_psi = series("psi", "x", "psi(x)");
    auto s_u = series("u", "x", "u(x)");
    auto s_up = series("u_prime", "x", "u'(x)");
    for (double x : xs) {
        const double u = ms.exact ? s.exact(x, 0) : s.u(x);
        const double up = ms.exact ? s.exact(x, 1) : s.u_prime(x);
        const double upp = ms.exact ? s.exact(x, 2) : s.u_second(x);
        const double psi = m.psi(x);
        r.results.add({x, psi, u, up, upp, derivative_bound_rhs(m, x)});
        s_psi.x.push_back(x);
        s_psi.y.push_back(psi);
        s_u.x.push_back(x);
        s_u.y.push_back(u);
        s_up.x.push_back(x);
        s_up.y.push_back(up);
    }
    auto s_k = series("komatsu", "theta", "L u(theta)");
    for (const auto& k : kom) {
        s_k.x.push_back(k.theta);
        s_k.y.push_back(k.generator_value);
    }
    r.plots = {s_psi, s_u, s_up, s_k};
    return r;
}

RunResult run_certify_density(const ExperimentConfig& cfg) {
    const auto law = make_stable_law(cfg.alpha);
    const GridSpec g = cfg.grid.value_or(GridSpec{-20.0, 20.0, 401});
    const auto xs = grid_points(g);
    RunResult r;
    r.report = certify_density(law, xs);
    r.report.subject = "certify-density";
    r.results.columns = {"x", "density", "envelope", "cdf"};
    auto s = series("density", "x", "g(x)");
    for (double x : xs) {
        const double d = stable_density(law, x);
        r.results.add({x, d, density_envelope(law, x), stable_cdf(law, x)});
        s.x.push_back(x);
        s.y.push_back(d);
    }
    r.plots = {s};
    return r;
}

RunResult run_distances(const ExperimentConfig& cfg, const RunOptions& opt) {
    const auto law = make_stable_law(cfg.alpha);
    const auto pair = make_pair(*cfg.pair, cfg.alpha);
    const double T = cfg.sim->T;
    const double a = cfg.alpha;
    const bool upper = cfg.density.mode == DensityMode::frozen_upper;
    const auto plain = make_frozen_model(law, pair, DensityMode::frozen_plain);
    const double B = distance_B(pair, plain, T);
    const double S = distance_S(pair, plain, T);

    RunResult r;
    r.report.subject = "distances";
    r.report.parameters = {{"alpha", a}, {"T", T}, {"x0", pair.x0}, {"x0_gap", std::abs(pair.x0_tilde - pair.x0)},
                           {"eta_tilde", pair.eta_tilde}};
    r.results.columns = {"quantity", "value"};
    r.results.add({std::string("B"), B});
    r.results.add({std::string("S"), S});

    SupOptions so;
    SupOptions ss = so;
    ss.variant = SupVariant::time_sup;
    const auto b_int = distance_B_sup(pair, T, so), b_sup = distance_B_sup(pair, T, ss);
    const auto s_int = distance_S_sup(pair, a, T, so), s_sup = distance_S_sup(pair, a, T, ss);
    r.results.add({std::string("B_sup_time_integral"), b_int.value});
    r.results.add({std::string("B_sup_time_sup"), b_sup.value});
    r.results.add({std::string("S_sup_time_integral"), s_int.value});
    r.results.add({std::string("S_sup_time_sup"), s_sup.value});
    r.report.parameters["sup_window_lo"] = b_int.window_lo;
    r.report.parameters["sup_window_hi"] = b_int.window_hi;
    r.report.parameters["sup_points"] = static_cast<double>(b_int.points);

    double B_used = B;
    if (upper) {
        const auto up = make_frozen_model(law, pair, DensityMode::frozen_upper, cfg.density.M);
        B_used = distance_B(pair, up, T);
        r.results.add({std::string("B_frozen_upper"), B_used});
        if (B > 0.0) {
            const double gap = std::abs(B_used / B - cfg.density.M);
            r.report.add({"upper_ratio", "B(frozen_upper) = M B(frozen_plain)", gap, 1e-9 * cfg.density.M,
                          gap <= 1e-9 * cfg.density.M, "M " + fmt(cfg.density.M)});
        }
    }

    const auto spec = make_rate_spec(a, pair.eta_tilde);
    const double gap = std::abs(pair.x0_tilde - pair.x0);
    const bool small = B < 1.0 && S < 1.0;
    r.report.add({"assumption_small_distances", "B < 1 and S < 1", std::max(B, S), 1.0, small, ""});
    if (small) {
        if (spec.branch == RateBranch::holder) {
            const auto e = rate_exponents(spec);
            r.results.add({std::string("e_B"), e.e_B});
            r.results.add({std::string("e_S"), e.e_S});
        }
        r.results.add({std::string("distance_term"), distance_term(spec, B, S)});
        r.results.add({std::string("bound_C1"), theoretical_bound(spec, gap, B, S)});
    }
    if (pair.unperturbed) {
        const double worst = std::max({B, S, b_int.value, b_sup.value, s_int.value, s_sup.value});
        r.report.add({"zero_perturbation", "identical coefficients give B = S = 0", worst, 0.0, worst == 0.0, ""});
    }

    if (cfg.density.mode == DensityMode::empirical) {
        SimConfig sc = sim_config(cfg, opt);
        auto data = simulate_legs(sc, {baseline_leg(pair)}, law);
        const auto emp = make_empirical_model(law, pair, data, 0, cfg.density.bins);
        const double Bh = distance_B(pair, emp, T);
        const double Sh = distance_S(pair, emp, T);
        const auto band = fit_density_band(plain, *emp.empirical);
        r.results.add({std::string("B_empirical"), Bh});
        r.results.add({std::string("S_empirical"), Sh});
        r.results.add({std::string("band_m"), band.m});
        r.results.add({std::string("band_M"), band.M});
        if (B > 0.0) {
            const double ratio = Bh / B;
            r.report.add({"empirical_band_B", "m B <= B_empirical <= M B", ratio, band.M,
                          ratio >= band.m && ratio <= band.M,
                          "band [" + fmt(band.m) + ", " + fmt(band.M) + "] from " + std::to_string(band.bins_used) +
                              " bins"});
        }
        if (S > 0.0) {
            const double ratio = std::pow(Sh / S, a);
            r.report.add({"empirical_band_S", "m S^alpha <= S_empirical^alpha <= M S^alpha", ratio, band.M,
                          ratio >= band.m && ratio <= band.M,
                          "band [" + fmt(band.m) + ", " + fmt(band.M) + "]"});
        }
    }

    auto s = series("frozen_density_T", "y", "p0_T(x0, y)");
    const double half = 10.0 * std::max(1.0, std::pow(T, 1.0 / a));
    for (int i = 0; i <= 400; ++i) {
        const double y = pair.x0 - half + 2.0 * half * i / 400.0;
        s.x.push_back(y);
        s.y.push_back(frozen_density(plain, T, y));
    }
    r.plots = {s};
    return r;
}

RunResult run_simulate(const ExperimentConfig& cfg, const RunOptions& opt) {
    const auto law = make_stable_law(cfg.alpha);
    const auto pair = make_pair(*cfg.pair, cfg.alpha);
    SimConfig sc = sim_config(cfg, opt);
    sc.keep_paths = opt.dump_paths;
    const auto ens = simulate_coupled(sc, pair, law);
    const double a = cfg.alpha;
    const auto curve = distance_moment_curve(ens, a - 1.0);

    RunResult r;
    r.report.subject = "simulate";
    r.report.parameters = {{"alpha", a},
                           {"T", sc.T},
                           {"n_steps", static_cast<double>(sc.n_steps)},
                           {"n_paths", static_cast<double>(sc.n_paths)},
                           {"seed", static_cast<double>(sc.seed)},
                           {"D_sup", curve.sup_mean},
                           {"D_sup_std_error", curve.sup_std_error},
                           {"D_sup_time", curve.sup_time}};
    r.results.columns = {"t", "distance", "std_error"};
    auto s = series("distance", "t", "E|X_t - X~_t|^(alpha-1)");
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        r.results.add({curve.times[i], curve.mean[i], curve.std_error[i]});
        s.x.push_back(curve.times[i]);
        s.y.push_back(curve.mean[i]);
    }
    auto tail = series("tail", "h", "h P(sup |X - X~|^(alpha-1) > h)");
    for (double h : {0.025, 0.05, 0.1, 0.2, 0.4, 0.8}) {
        const auto t = tail_probability(ens, h);
        tail.x.push_back(h);
        tail.y.push_back(h * t.probability);
    }
    r.plots = {s, tail};

    const double flagged = static_cast<double>(ens.data().n_flagged) / static_cast<double>(sc.n_paths);
    r.report.add({"flagged_fraction", "paths leaving [-x_clip, x_clip] excluded, at most 1%", flagged, 0.01,
                  flagged <= 0.01, std::to_string(ens.data().n_flagged) + " flagged"});
    if (pair.unperturbed && pair.x0 == pair.x0_tilde) {
        double worst = 0.0;
        for (std::size_t p = 0; p < ens.n_paths(); ++p) worst = std::max(worst, ens.grid_sup(p));
        const bool same = ens.digest_x() == ens.digest_x_tilde();
        r.report.add({"coupling_exact", "identical coefficients and x0 give X = X~ on every grid point", worst, 0.0,
                      worst == 0.0 && same, same ? "leg digests equal" : "leg digests differ"});
    }

    if (opt.dump_paths) {
        const auto& d = ens.data();
        const std::size_t steps = static_cast<std::size_t>(sc.n_steps) + 1;
        const std::size_t np = std::min(kMaxDumpedPaths, d.n_paths());
        Table t;
        t.columns = {"path", "step", "t", "x", "x_tilde"};
        for (std::size_t p = 0; p < np; ++p) {
            for (std::size_t k = 0; k < steps; ++k) {
                const double x = d.full_paths[(ens.leg_x() * d.n_paths() + p) * steps + k];
                const double xt = d.full_paths[(ens.leg_x_tilde() * d.n_paths() + p) * steps + k];
                t.add({static_cast<long long>(p), static_cast<long long>(k),
                       sc.T * static_cast<double>(k) / static_cast<double>(sc.n_steps), x, xt});
            }
        }
        r.paths = std::move(t);
    }
    return r;
}

RunResult run_sweep_cmd(const ExperimentConfig& cfg, const RunOptions& opt) {
    const auto law = make_stable_law(cfg.alpha);
    const auto family = family_of(cfg);
    const auto& sw = *cfg.sweep;
    const auto first = family.member(sw.first, cfg.alpha);
    const auto spec = make_rate_spec(cfg.alpha, first.eta_tilde, sw.flavor);
    SweepOptions so;
    so.h_values = sw.h;
    so.calibrate_index = sw.calibrate_index;
    const auto res = run_sweep(family, sim_config(cfg, opt), law, spec, so);

    RunResult r;
    r.report.subject = "sweep";
    r.report.parameters = {{"alpha", cfg.alpha},
                           {"eta_tilde", spec.eta_tilde},
                           {"C_fit", res.C_fit},
                           {"calibrated_n", static_cast<double>(res.calibrated_n)},
                           {"slope_D_vs_size", res.slope_vs_size.slope},
                           {"slope_D_vs_bound", res.slope_vs_bound.slope},
                           {"slope_S_vs_size", res.S_slope_vs_size.slope},
                           {"slope_B_vs_size", res.B_slope_vs_size.slope}};
    r.results.columns = {"n", "size", "B", "S", "x0_gap", "D", "D_se", "bound", "fitted_bound", "within", "violation"};
    auto d_bound = series("D_vs_bound", "log bound", "log D");
    auto d_size = series("D_vs_size", "log size", "log D");
    auto s_size = series("S_vs_size", "log size", "log S");
    for (const auto& row : res.rows) {
        r.results.add({static_cast<long long>(row.n), row.size, row.B, row.S, row.x0_gap, row.D, row.D_se, row.bound,
                       row.fitted_bound, static_cast<long long>(row.within), row.violation_reason});
        if (row.bound > 0.0 && row.D > 0.0) {
            d_bound.x.push_back(std::log(row.bound));
            d_bound.y.push_back(std::log(row.D));
        }
        if (row.D > 0.0) {
            d_size.x.push_back(std::log(row.size));
            d_size.y.push_back(std::log(row.D));
        }
        if (row.S > 0.0) {
            s_size.x.push_back(std::log(row.size));
            s_size.y.push_back(std::log(row.S));
        }
        if (row.n == res.calibrated_n || row.violation) continue;
        r.report.add({"bound_n" + std::to_string(row.n), "D_n - 2 SE <= C_fit (x0_gap^(alpha-1) + distance term)",
                      row.D - 2.0 * row.D_se, row.fitted_bound, row.within,
                      "C_fit from n = " + std::to_string(res.calibrated_n)});
    }
    r.plots = {d_bound, d_size, s_size};
    for (const auto& row : res.rows) {
        if (row.tails.empty()) continue;
        auto t = series("tail_n" + std::to_string(row.n), "h", "h P(sup > h)");
        for (const auto& e : row.tails) {
            t.x.push_back(e.h);
            t.y.push_back(e.h * e.probability);
        }
        r.plots.push_back(t);
    }
    if (sw.tail_calibrate_h) {
        auto it = std::find_if(res.rows.begin(), res.rows.end(), [&](const SweepRow& w) { return w.n == *sw.tail_member; });
        if (it->violation) {
            r.report.add({"tail_shape", "h P(sup > h) <= C_fit bound numerator", std::nan(""), 0.0, false,
                          "assumption violated for the tail member"});
        } else {
            const auto tc = tail_shape_check(it->tails, it->bound, *sw.tail_calibrate_h);
            for (const auto& tr : tc.rows) {
                if (tr.tail.h == *sw.tail_calibrate_h) continue;
                r.report.add({"tail_h" + fmt(tr.tail.h), "h P(sup > h) <= C_fit bound numerator (Wilson lower limit)",
                              tr.lhs_lo, tr.rhs, tr.passed,
                              "member n = " + std::to_string(*sw.tail_member) + ", C_fit from h = " +
                                  fmt(*sw.tail_calibrate_h)});
            }
        }
    }
    if (r.report.checks.empty())
        r.report.add({"rows_checked", "at least one out-of-sample row", 0.0, 1.0, false,
                      "no row besides the calibration member satisfies the assumptions"});
    return r;
}

RunResult run_converge(const ExperimentConfig& cfg, const RunOptions& opt) {
    const auto law = make_stable_law(cfg.alpha);
    const auto family = family_of(cfg);
    const double p = cfg.sweep->p.value_or(0.5 * (1.0 + cfg.alpha));
    const auto rep = convergence_experiment(family, sim_config(cfg, opt), law, p);

    RunResult r;
    r.report.subject = "converge";
    r.report.parameters = {{"alpha", cfg.alpha},
                           {"p", p},
                           {"limit_residual", rep.limit_residual},
                           {"limit_residual_std_error", rep.limit_residual_se},
                           {"lp_common", rep.lp.common},
                           {"lp_trend_slope", rep.lp.trend.slope}};
    r.results.columns = {"n", "m", "D", "D_se", "monotone"};
    auto c = series("cauchy", "n", "D_{n,n+1}");
    std::size_t broken = 0;
    for (const auto& row : rep.rows) {
        r.results.add({static_cast<long long>(row.n), static_cast<long long>(row.m), row.D, row.D_se,
                       static_cast<long long>(row.monotone)});
        c.x.push_back(row.n);
        c.y.push_back(row.D);
        if (!row.monotone) ++broken;
    }
    r.results.add({static_cast<long long>(cfg.sweep->last), std::string("limit"), rep.limit_residual,
                   rep.limit_residual_se, 1LL});
    r.report.add({"cauchy_decreasing", "D_{n+1,n+2} <= D_{n,n+1} + 2 SE", static_cast<double>(broken), 0.0,
                  rep.cauchy_decreasing, "rows breaking monotonicity"});
    double worst = 0.0;
    auto lp = series("uniform_lp", "n", "E sup |X^(n)|^p");
    for (const auto& row : rep.lp.rows) {
        worst = std::max(worst, std::abs(row.moment.mean - rep.lp.common) / row.moment.std_error);
        lp.x.push_back(row.index);
        lp.y.push_back(row.moment.mean);
    }
    r.report.add({"uniform_lp", "sup_n E sup_t |X^(n)_t|^p < infinity: members within 3 SE of a common constant",
                  worst, 3.0, rep.lp.passed, "p = " + fmt(p)});
    r.plots = {c, lp};
    return r;
}

}  // namespace

RunResult execute(const ExperimentConfig& cfg, const RunOptions& opt) {
    switch (cfg.command) {
        case Command::certify_mollifier: return run_certify_mollifier(cfg);
        case Command::certify_density: return run_certify_density(cfg);
        case Command::distances: return run_distances(cfg, opt);
        case Command::simulate: return run_simulate(cfg, opt);
        case Command::sweep: return run_sweep_cmd(cfg, opt);
        case Command::converge: return run_converge(cfg, opt);
    }
    throw DomainError("command", "unknown command");
}

void write_outputs(const RunResult& r, const OutputSpec& out, const std::string& dir) {
    const std::filesystem::path base(dir);
    if (out.csv) write_file((base / "results.csv").string(), to_csv(r.results));
    if (out.json) write_file((base / "report.json").string(), r.report.to_json() + "\n");
    if (out.tsv)
        for (const auto& s : r.plots) write_file((base / "plotdata" / (s.name + ".tsv")).string(), to_tsv(s));
    if (r.paths) write_file((base / "paths.csv").string(), to_csv(*r.paths));
}

int run(const std::string& config_path, const std::vector<std::string>& overrides, const RunOptions& opt,
        std::ostream& out, std::ostream& err) {
    try {
        Document doc = load_document(config_path);
        apply_overrides(doc, overrides);
        const ExperimentConfig cfg = interpret(doc);
        const RunResult r = execute(cfg, opt);
        const std::string problem = validate_report_json(r.report.to_json());
        if (!problem.empty()) throw std::runtime_error("report failed validation: " + problem);
        const std::string dir = opt.out_dir.value_or(cfg.output.dir);
        write_outputs(r, cfg.output, dir);
        for (const auto& c : r.report.checks)
            out << (c.passed ? "PASS " : "FAIL ") << c.name << "  value " << fmt(c.value) << "  threshold "
                << fmt(c.threshold) << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
        out << to_string(cfg.command) << ": " << (r.report.passed() ? "all checks passed" : "some checks failed")
            << "; outputs in " << dir << "\n";
        return r.report.passed() ? 0 : 1;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "domain error: parameter '" << e.parameter() << "': " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

int print_bound(const BoundQuery& q, std::ostream& out, std::ostream& err) {
    try {
        const auto spec = make_rate_spec(q.alpha, q.eta_tilde);
        if (spec.branch == RateBranch::log)
            out << "log branch: eta_tilde = 1/alpha, distance term 1/log(1/max{B, S})\n";
        else
            out << "holder branch: eta_tilde > 1/alpha, distance term max{B^e_B, S^e_S}\n";
        const double term = distance_term(spec, q.B, q.S);
        const double x0_term = std::pow(q.x0_gap, q.alpha - 1.0);
        auto row = [&](const char* k, const std::string& v) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%-26s", k);
            out << buf << v << "\n";
        };
        row("alpha", fmt(q.alpha));
        row("eta_tilde", fmt(q.eta_tilde));
        if (spec.branch == RateBranch::holder) {
            const auto e = rate_exponents(spec);
            row("e_B", fmt(e.e_B));
            row("e_S", fmt(e.e_S));
        }
        row("B", fmt(q.B));
        row("S", fmt(q.S));
        row("x0 gap term", fmt(x0_term));
        row("distance term", fmt(term));
        row("bound (C_fit = 1)", fmt(theoretical_bound(spec, q.x0_gap, q.B, q.S)));
        if (q.h) row("tail bound (C_fit = 1)", fmt(tail_bound(spec, q.x0_gap, q.B, q.S, *q.h)));
        return 0;
    } catch (const AssumptionViolation& e) {
        err << "assumption violated: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        err << "domain error: parameter '" << e.parameter() << "': " << e.what() << "\n";
        return 3;
    }
}

}  // namespace stablab::cli
