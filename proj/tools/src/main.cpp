// SPDX-License-Identifier: MIT
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

// Accepts plain numbers and "p/q" fractions such as 1/1.5.
bool parse_number(const std::string& text, double& out) {
    try {
        std::size_t used = 0;
        const auto slash = text.find('/');
        if (slash == std::string::npos) {
            out = std::stod(text, &used);
            return used == text.size();
        }
        std::size_t u2 = 0;
        const double num = std::stod(text.substr(0, slash), &used);
        const double den = std::stod(text.substr(slash + 1), &u2);
        out = num / den;
        return used == slash && u2 == text.size() - slash - 1;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stablab: stable-driven SDE stability laboratory"};
    app.require_subcommand(0, 1);

    std::string config;
    std::vector<std::string> overrides;
    std::string out_dir;
    stablab::cli::RunOptions opt;
    app.add_option("--config", config, "Experiment config file (JSON)");
    app.add_option("--set", overrides, "Override a config value, key.path=value (repeatable)");
    app.add_option("--out", out_dir, "Output directory (overrides output.dir)");
    app.add_option("--threads", opt.threads, "Worker threads; 0 = hardware concurrency")->check(CLI::NonNegativeNumber);
    app.add_flag("--dump-paths", opt.dump_paths, "simulate: write paths.csv with the first 100 coupled paths");

    std::string alpha_s, eta_s, B_s, S_s, gap_s = "0", h_s;
    auto* bound = app.add_subcommand("bound", "Print branch, exponents and bound value for given distances");
    bound->set_help_flag("--help", "Print this help message and exit");
    bound->add_option("--alpha", alpha_s, "Stability index in (1, 2)")->required();
    bound->add_option("--eta", eta_s, "Holder exponent eta_tilde in [1/alpha, 1]; fractions like 1/1.5 allowed")
        ->required();
    bound->add_option("--B", B_s, "Drift distance B")->required();
    bound->add_option("--S", S_s, "Jump distance S")->required();
    bound->add_option("--gap", gap_s, "Initial value gap |x0 - x0_tilde|");
    bound->add_option("--h", h_s, "Tail level h > 0 for the tail bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (bound->parsed()) {
        stablab::cli::BoundQuery q;
        double h = 0.0;
        const bool ok = parse_number(alpha_s, q.alpha) && parse_number(eta_s, q.eta_tilde) &&
                        parse_number(B_s, q.B) && parse_number(S_s, q.S) && parse_number(gap_s, q.x0_gap) &&
                        (h_s.empty() || parse_number(h_s, h));
        if (!ok) {
            std::cerr << "parse error: bound arguments must be numbers or p/q fractions\n";
            return 2;
        }
        if (!h_s.empty()) q.h = h;
        return stablab::cli::print_bound(q, std::cout, std::cerr);
    }
    if (config.empty()) {
        std::cerr << "parse error: --config is required (or use the 'bound' subcommand)\n";
        return 2;
    }
    if (!out_dir.empty()) opt.out_dir = out_dir;
    return stablab::cli::run(config, overrides, opt, std::cout, std::cerr);
}
