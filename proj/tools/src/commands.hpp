// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "output.hpp"
#include "stablab/report.hpp"

namespace stablab::cli {

struct RunOptions {
    std::optional<std::string> out_dir;  // overrides output.dir
    int threads = 0;
    bool dump_paths = false;
};

/// Everything a command produces before it is written out.
struct RunResult {
    CertificationReport report;
    Table results;
    std::vector<Series> plots;
    std::optional<Table> paths;  // --dump-paths
};

RunResult execute(const ExperimentConfig& cfg, const RunOptions& opt);

/// Writes results.csv, report.json, plotdata/*.tsv (and paths.csv) to `dir`
/// according to the formats selected in `out`.
void write_outputs(const RunResult& r, const OutputSpec& out, const std::string& dir);

/// Full pipeline behind `stablab run`: load, override, interpret, execute,
/// write. Returns the process exit status: 0 all checks pass, 1 a check
/// failed, 2 parse error, 3 domain error, 4 numeric failure.
int run(const std::string& config_path, const std::vector<std::string>& overrides, const RunOptions& opt,
        std::ostream& out, std::ostream& err);

struct BoundQuery {
    double alpha = 0.0;
    double eta_tilde = 0.0;
    double B = 0.0;
    double S = 0.0;
    double x0_gap = 0.0;
    std::optional<double> h;
};

/// Branch, exponents and bound value (C_fit = 1) as a table. Returns the exit
/// status (0, or 3 when the query violates an assumption or domain).
int print_bound(const BoundQuery& q, std::ostream& out, std::ostream& err);

}  // namespace stablab::cli
