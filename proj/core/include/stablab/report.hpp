// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <string>
#include <vector>

namespace stablab {

/// One pass/fail row. `anchor` is the statement being tested, written out as
/// a formula so the row is self-describing.
struct Check {
    std::string name;
    std::string anchor;
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::string detail;
};

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t points = 0;
};

/// Machine-readable certification outcome: parameters, grid and checks.
struct CertificationReport {
    std::string subject;
    std::map<std::string, double> parameters;
    GridSpec grid;
    std::vector<Check> checks;

    bool passed() const;
    void add(Check c) { checks.push_back(std::move(c)); }
    std::string to_json(int indent = 2) const;
};

/// Structural validation of a report document produced by `to_json` (or the
/// CLI's report.json). Returns an empty string when valid, else the first problem.
std::string validate_report_json(const std::string& text);

}  // namespace stablab
