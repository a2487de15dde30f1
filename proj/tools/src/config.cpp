// SPDX-License-Identifier: MIT
#include "config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "stablab/error.hpp"

namespace stablab::cli {

namespace {

using json = nlohmann::json;

std::string position_suffix(std::size_t line, std::size_t column) {
    if (line == 0) return "";
    return " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// Best effort: the first occurrence of each quoted key after the previous one.
std::pair<std::size_t, std::size_t> locate(const std::string& text, const std::string& dotted) {
    std::size_t pos = 0;
    for (const auto& key : split(dotted, '.')) {
        const auto p = text.find("\"" + key + "\"", pos);
        if (p == std::string::npos) return {0, 0};
        pos = p;
    }
    return line_col(text, pos);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

class Obj {
public:
    Obj(const json& j, std::string path, const std::string& text) : j_(&j), path_(std::move(path)), text_(&text) {
        if (!j.is_object()) fail(path_, "expected an object");
    }

    [[noreturn]] void fail(const std::string& where, const std::string& msg) const {
        const auto [line, col] = locate(*text_, where);
        throw ParseError(where + ": " + msg, line, col);
    }

    bool has(const std::string& key) const { return j_->contains(key); }

    const json& raw(const std::string& key) const {
        seen_.insert(key);
        if (!j_->contains(key)) fail(join(path_, key), "required key is missing");
        return j_->at(key);
    }

    double num(const std::string& key) const {
        const auto& v = raw(key);
        if (!v.is_number()) fail(join(path_, key), "expected a number");
        return v.get<double>();
    }
    double num(const std::string& key, double def) const { return has(key) ? num(key) : def; }

    long long integer(const std::string& key) const {
        const auto& v = raw(key);
        if (!v.is_number_integer()) fail(join(path_, key), "expected an integer");
        return v.get<long long>();
    }
    long long integer(const std::string& key, long long def) const { return has(key) ? integer(key) : def; }

    std::string str(const std::string& key) const {
        const auto& v = raw(key);
        if (!v.is_string()) fail(join(path_, key), "expected a string");
        return v.get<std::string>();
    }
    std::string str(const std::string& key, const std::string& def) const { return has(key) ? str(key) : def; }

    bool boolean(const std::string& key, bool def) const {
        if (!has(key)) return def;
        const auto& v = raw(key);
        if (!v.is_boolean()) fail(join(path_, key), "expected true or false");
        return v.get<bool>();
    }

    std::vector<double> numbers(const std::string& key) const {
        const auto& v = raw(key);
        if (!v.is_array()) fail(join(path_, key), "expected an array of numbers");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) fail(join(path_, key), "expected an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

    std::vector<std::string> strings(const std::string& key) const {
        const auto& v = raw(key);
        if (!v.is_array()) fail(join(path_, key), "expected an array of strings");
        std::vector<std::string> out;
        for (const auto& e : v) {
            if (!e.is_string()) fail(join(path_, key), "expected an array of strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    Obj child(const std::string& key) const { return Obj(raw(key), join(path_, key), *text_); }
    std::optional<Obj> maybe(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return child(key);
    }

    /// Rejects every key that was never read.
    void finish() const {
        for (auto it = j_->begin(); it != j_->end(); ++it)
            if (!seen_.count(it.key())) fail(join(path_, it.key()), "unknown key");
    }

    const std::string& path() const { return path_; }

private:
    const json* j_;
    std::string path_;
    const std::string* text_;
    mutable std::set<std::string> seen_;
};

template <class E>
E pick(const Obj& o, const std::string& key, const std::string& value,
       std::initializer_list<std::pair<const char*, E>> options) {
    std::string names;
    for (const auto& [name, e] : options) {
        if (value == name) return e;
        names += names.empty() ? name : std::string(", ") + name;
    }
    o.fail(join(o.path(), key), "unknown name '" + value + "' (expected one of: " + names + ")");
}

// Rethrows a library DomainError with the config path of its parameter.
[[noreturn]] void rethrow_domain(const DomainError& e, const std::string& prefix) {
    const std::string what = e.what();
    const std::string msg = what.size() > e.parameter().size() + 2 ? what.substr(e.parameter().size() + 2) : what;
    throw DomainError(join(prefix, e.parameter()), msg);
}

DriftSpec read_drift(const Obj& o) {
    DriftSpec d;
    d.kind = pick(o, "name", o.str("name"),
                  {std::pair{"zero", DriftKind::zero}, {"linear", DriftKind::linear}, {"tanh", DriftKind::tanh},
                   {"kinked", DriftKind::kinked}});
    if (d.kind != DriftKind::zero) d.beta = o.num("beta");
    d.center = o.num("center", 0.0);
    o.finish();
    return d;
}

JumpSpec read_jump(const Obj& o) {
    JumpSpec j;
    j.kind = pick(o, "name", o.str("name"), {std::pair{"constant", JumpKind::constant}, {"cosine", JumpKind::cosine}});
    j.s0 = o.num("s0");
    if (j.kind == JumpKind::cosine) {
        j.s1 = o.num("s1");
        j.omega = o.num("omega");
    }
    o.finish();
    return j;
}

ShapeKind read_shape(const Obj& o) {
    return pick(o, "shape", o.str("shape"),
                {std::pair{"none", ShapeKind::none}, {"shift", ShapeKind::shift}, {"bump", ShapeKind::bump},
                 {"holder", ShapeKind::holder}, {"mollify", ShapeKind::mollify}});
}

PerturbationSpec read_perturbation(const Obj& o) {
    PerturbationSpec p;
    if (auto d = o.maybe("drift")) {
        p.drift_shape = read_shape(*d);
        p.drift_amplitude = d->num("amplitude", 0.0);
        p.drift_center = d->num("center", 0.0);
        p.drift_width = d->num("width", 1.0);
        d->finish();
    }
    if (auto j = o.maybe("jump")) {
        p.jump_shape = read_shape(*j);
        p.jump_amplitude = j->num("amplitude", 0.0);
        p.jump_center = j->num("center", 0.0);
        p.jump_width = j->num("width", 1.0);
        j->finish();
    }
    p.eta_tilde = o.num("eta_tilde", 1.0);
    if (auto t = o.maybe("profile")) {
        p.profile.kind = pick(*t, "kind", t->str("kind"),
                              {std::pair{"constant", TimeProfileKind::constant},
                               {"exp_decay", TimeProfileKind::exp_decay}, {"window", TimeProfileKind::window}});
        p.profile.rate = t->num("rate", 1.0);
        p.profile.t0 = t->num("t0", 0.0);
        p.profile.t1 = t->num("t1", std::numeric_limits<double>::infinity());
        t->finish();
    }
    o.finish();
    return p;
}

PairSpec read_pair(const Obj& o) {
    PairSpec s;
    s.drift = read_drift(o.child("drift"));
    s.jump = read_jump(o.child("jump"));
    if (auto p = o.maybe("perturbation")) s.perturbation = read_perturbation(*p);
    s.x0 = o.num("x0");
    s.x0_gap = o.num("x0_gap", 0.0);
    o.finish();
    return s;
}

SimConfig read_sim(const Obj& o, bool full) {
    SimConfig c;
    c.T = o.num("T");
    if (full) {
        c.n_steps = static_cast<int>(o.integer("n_steps"));
        const long long n = o.integer("n_paths");
        if (n < 1) throw DomainError("sim.n_paths", "must be at least 1");
        c.n_paths = static_cast<std::size_t>(n);
        c.seed = static_cast<std::uint64_t>(o.integer("seed"));
    } else {
        c.n_steps = static_cast<int>(o.integer("n_steps", c.n_steps));
        c.n_paths = static_cast<std::size_t>(std::max(1LL, o.integer("n_paths", static_cast<long long>(c.n_paths))));
        c.seed = static_cast<std::uint64_t>(o.integer("seed", static_cast<long long>(c.seed)));
    }
    c.x_clip = o.num("x_clip", c.x_clip);
    c.n_records = static_cast<int>(o.integer("n_records", c.n_records));
    o.finish();
    try {
        c.validate();
    } catch (const DomainError& e) {
        rethrow_domain(e, "sim");
    }
    return c;
}

SweepSection read_sweep(const Obj& o, Command cmd) {
    SweepSection s;
    s.family = pick(o, "family", o.str("family"),
                    {std::pair{"initial_value", FamilyKind::initial_value}, {"drift_bump", FamilyKind::drift_bump},
                     {"jump_bump", FamilyKind::jump_bump}, {"jump_holder", FamilyKind::jump_holder},
                     {"mollification", FamilyKind::mollification}});
    s.first = static_cast<int>(o.integer("first"));
    s.last = static_cast<int>(o.integer("last"));
    s.scale = o.num("scale");
    if (cmd == Command::sweep) {
        s.flavor = pick(o, "flavor", o.str("flavor", "weighted"),
                        {std::pair{"weighted", DistanceFlavor::weighted}, {"sup", DistanceFlavor::sup}});
        s.calibrate_index = static_cast<int>(o.integer("calibrate_index", s.first));
        if (o.has("h")) s.h = o.numbers("h");
        if (o.has("tail_calibrate_h")) s.tail_calibrate_h = o.num("tail_calibrate_h");
        if (o.has("tail_member")) s.tail_member = static_cast<int>(o.integer("tail_member"));
    } else {
        if (o.has("p")) s.p = o.num("p");
    }
    o.finish();
    if (s.last < s.first) throw DomainError("sweep.last", "must not be below sweep.first");
    if (cmd == Command::sweep && s.last - s.first + 1 < 4)
        throw DomainError("sweep.last", "slope fits need at least 4 family members");
    if (cmd == Command::converge && s.last == s.first)
        throw DomainError("sweep.last", "convergence needs at least two members");
    if (!(s.scale > 0.0) || !std::isfinite(s.scale)) throw DomainError("sweep.scale", "must be positive");
    if (cmd == Command::sweep) {
        if (s.calibrate_index < s.first || s.calibrate_index > s.last)
            throw DomainError("sweep.calibrate_index", "must name a family member");
        for (double h : s.h)
            if (!(h > 0.0)) throw DomainError("sweep.h", "tail levels must be positive");
        if (s.tail_calibrate_h) {
            bool found = false;
            for (double h : s.h) found = found || h == *s.tail_calibrate_h;
            if (!found) throw DomainError("sweep.tail_calibrate_h", "must be one of sweep.h");
            if (!s.tail_member) throw DomainError("sweep.tail_member", "required with sweep.tail_calibrate_h");
            if (*s.tail_member < s.first || *s.tail_member > s.last)
                throw DomainError("sweep.tail_member", "must name a family member");
        }
    }
    return s;
}

GridSpec read_grid(const Obj& o) {
    GridSpec g;
    g.lo = o.num("lo");
    g.hi = o.num("hi");
    const long long n = o.integer("points");
    o.finish();
    if (!(g.hi > g.lo)) throw DomainError("grid.hi", "must exceed grid.lo");
    if (n < 2) throw DomainError("grid.points", "need at least 2 points");
    g.points = static_cast<std::size_t>(n);
    return g;
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(what + position_suffix(line, column)), line_(line), column_(column) {}

const char* to_string(Command c) {
    switch (c) {
        case Command::certify_mollifier: return "certify-mollifier";
        case Command::certify_density: return "certify-density";
        case Command::distances: return "distances";
        case Command::simulate: return "simulate";
        case Command::sweep: return "sweep";
        case Command::converge: return "converge";
    }
    return "?";
}

Document parse_document(const std::string& text) {
    Document d;
    d.text = text;
    try {
        d.root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string msg = e.what();
        const auto p = msg.find("syntax error");
        if (p != std::string::npos) msg = msg.substr(p);
        throw ParseError("config: " + msg, line, col);
    }
    if (!d.root.is_object()) throw ParseError("config: top level must be an object", 1, 1);
    return d;
}

Document load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("config: cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

void apply_overrides(Document& doc, const std::vector<std::string>& overrides) {
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("--set " + o + ": expected key=value");
        const auto keys = split(o.substr(0, eq), '.');
        const std::string value = o.substr(eq + 1);
        json* node = &doc.root;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (keys[i].empty()) throw ParseError("--set " + o + ": empty key segment");
            if (!node->is_object()) throw ParseError("--set " + o + ": '" + keys[i - 1] + "' is not an object");
            node = &(*node)[keys[i]];
        }
        json parsed = json::parse(value, nullptr, false);
        *node = parsed.is_discarded() ? json(value) : parsed;
    }
}

ExperimentConfig interpret(const Document& doc) {
    Obj top(doc.root, "", doc.text);
    ExperimentConfig cfg;
    cfg.command = pick(top, "command", top.str("command"),
                       {std::pair{"certify-mollifier", Command::certify_mollifier},
                        {"certify-density", Command::certify_density}, {"distances", Command::distances},
                        {"simulate", Command::simulate}, {"sweep", Command::sweep}, {"converge", Command::converge}});
    {
        Obj law = top.child("law");
        cfg.alpha = law.num("alpha");
        law.finish();
        if (!(cfg.alpha > 1.0 && cfg.alpha < 2.0)) throw DomainError("law.alpha", "must lie in the open interval (1, 2)");
    }
    const Command c = cfg.command;
    const bool needs_pair = c == Command::distances || c == Command::simulate || c == Command::sweep ||
                            c == Command::converge;
    const bool full_sim = c == Command::simulate || c == Command::sweep || c == Command::converge;

    if (c == Command::certify_mollifier || top.has("mollifier")) {
        Obj m = top.child("mollifier");
        MollifierSection s;
        s.eps = m.num("eps");
        s.delta = m.num("delta");
        s.exact = m.boolean("exact", true);
        s.tol = m.num("tol", 1e-3);
        if (m.has("komatsu_theta")) s.komatsu_theta = m.numbers("komatsu_theta");
        m.finish();
        if (!(s.eps >= 1e-6) || !std::isfinite(s.eps)) throw DomainError("mollifier.eps", "must be at least 1e-6");
        if (!(s.delta > 1.0) || !std::isfinite(s.delta)) throw DomainError("mollifier.delta", "must exceed 1");
        if (!(s.tol >= 0.0)) throw DomainError("mollifier.tol", "must be non-negative");
        for (double t : s.komatsu_theta)
            if (t == 0.0 || !std::isfinite(t)) throw DomainError("mollifier.komatsu_theta", "points must be finite and nonzero");
        cfg.mollifier = s;
    }
    if (auto g = top.maybe("grid")) cfg.grid = read_grid(*g);
    if (auto d = top.maybe("density")) {
        cfg.density.mode = pick(*d, "mode", d->str("mode", "frozen_plain"),
                                {std::pair{"frozen_plain", DensityMode::frozen_plain},
                                 {"frozen_upper", DensityMode::frozen_upper}, {"empirical", DensityMode::empirical}});
        cfg.density.M = d->num("M", 1.0);
        cfg.density.bins = static_cast<int>(d->integer("bins", 60));
        d->finish();
        if (!(cfg.density.M > 0.0)) throw DomainError("density.M", "must be positive");
        if (cfg.density.bins < 4) throw DomainError("density.bins", "need at least 4 bins");
    }
    if (needs_pair || top.has("coefficients")) {
        cfg.pair = read_pair(top.child("coefficients"));
        try {
            (void)make_pair(*cfg.pair, cfg.alpha);
        } catch (const DomainError& e) {
            rethrow_domain(e, "coefficients");
        }
    }
    if (needs_pair || top.has("sim")) cfg.sim = read_sim(top.child("sim"), full_sim);
    if (c == Command::sweep || c == Command::converge) {
        cfg.sweep = read_sweep(top.child("sweep"), c);
        if (cfg.sweep->p && !(*cfg.sweep->p > 1.0 && *cfg.sweep->p < cfg.alpha))
            throw DomainError("sweep.p", "must lie in (1, alpha)");
        if (cfg.sweep->family == FamilyKind::mollification && cfg.pair->drift.kind != DriftKind::kinked)
            throw DomainError("coefficients.drift.name", "mollification family needs the kinked drift");
    }
    if (auto o = top.maybe("output")) {
        cfg.output.dir = o->str("dir", cfg.output.dir);
        if (o->has("formats")) {
            cfg.output.csv = cfg.output.json = cfg.output.tsv = false;
            for (const auto& f : o->strings("formats")) {
                if (f == "csv") cfg.output.csv = true;
                else if (f == "json") cfg.output.json = true;
                else if (f == "tsv") cfg.output.tsv = true;
                else o->fail("output.formats", "unknown format '" + f + "' (expected csv, json, tsv)");
            }
        }
        o->finish();
    }
    top.finish();
    return cfg;
}

}  // namespace stablab::cli
