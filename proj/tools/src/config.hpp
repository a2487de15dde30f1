// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stablab/coefficients.hpp"
#include "stablab/measures.hpp"
#include "stablab/rate_lab.hpp"
#include "stablab/report.hpp"
#include "stablab/simulator.hpp"

namespace stablab::cli {

/// Malformed or schema-violating configuration. line/column are 1-based, 0
/// when the problem has no position in the file (e.g. a --set override).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_, column_;
};

enum class Command { certify_mollifier, certify_density, distances, simulate, sweep, converge };

const char* to_string(Command c);

struct OutputSpec {
    std::string dir = "out";
    bool csv = true;
    bool json = true;
    bool tsv = true;
};

struct MollifierSection {
    double eps = 0.0;
    double delta = 0.0;
    bool exact = true;
    double tol = 1e-3;
    std::vector<double> komatsu_theta;  // empty: default points
};

struct DensitySection {
    DensityMode mode = DensityMode::frozen_plain;
    double M = 1.0;
    int bins = 60;
};

struct SweepSection {
    FamilyKind family = FamilyKind::initial_value;
    int first = 1;
    int last = 6;
    double scale = 1.0;
    DistanceFlavor flavor = DistanceFlavor::weighted;
    int calibrate_index = -1;
    std::vector<double> h;
    std::optional<double> tail_calibrate_h;
    std::optional<int> tail_member;
    std::optional<double> p;  // converge only; default (1 + alpha)/2
};

struct ExperimentConfig {
    Command command = Command::certify_density;
    double alpha = 0.0;
    std::optional<MollifierSection> mollifier;
    std::optional<GridSpec> grid;
    DensitySection density;
    std::optional<PairSpec> pair;
    std::optional<SimConfig> sim;
    std::optional<SweepSection> sweep;
    OutputSpec output;
};

/// Raw document plus the source text, kept for error positions.
struct Document {
    nlohmann::json root;
    std::string text;
};

/// Parses JSON text; syntax errors become ParseError with line/column.
Document parse_document(const std::string& text);
Document load_document(const std::string& path);

/// Applies "a.b.c=value" overrides. The value is read as JSON when it parses,
/// else as a string. Throws ParseError for a malformed override.
void apply_overrides(Document& doc, const std::vector<std::string>& overrides);

/// Strict schema: unknown keys and missing required keys are ParseError;
/// values outside their domains are DomainError naming the parameter.
ExperimentConfig interpret(const Document& doc);

}  // namespace stablab::cli
