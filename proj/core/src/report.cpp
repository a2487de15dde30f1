// SPDX-License-Identifier: MIT
#include "stablab/report.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace stablab {

namespace {

nlohmann::json number(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

bool CertificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string CertificationReport::to_json(int indent) const {
    nlohmann::json doc;
    doc["subject"] = subject;
    doc["passed"] = passed();
    auto& params = doc["parameters"] = nlohmann::json::object();
    for (const auto& [k, v] : parameters) params[k] = number(v);
    doc["grid"] = {{"lo", number(grid.lo)}, {"hi", number(grid.hi)}, {"points", grid.points}};
    auto& rows = doc["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        rows.push_back({{"name", c.name},
                        {"anchor", c.anchor},
                        {"value", number(c.value)},
                        {"threshold", number(c.threshold)},
                        {"passed", c.passed},
                        {"detail", c.detail}});
    }
    return doc.dump(indent);
}

std::string validate_report_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        return std::string("not valid JSON: ") + e.what();
    }
    if (!doc.is_object()) return "top level must be an object";
    for (const char* key : {"subject", "passed", "parameters", "grid", "checks"})
        if (!doc.contains(key)) return std::string("missing key '") + key + "'";
    if (!doc["subject"].is_string()) return "subject must be a string";
    if (!doc["passed"].is_boolean()) return "passed must be a boolean";
    if (!doc["parameters"].is_object()) return "parameters must be an object";
    const auto& grid = doc["grid"];
    if (!grid.is_object() || !grid.contains("lo") || !grid.contains("hi") || !grid.contains("points"))
        return "grid must hold lo, hi, points";
    if (!doc["checks"].is_array()) return "checks must be an array";
    bool all = true;
    for (const auto& row : doc["checks"]) {
        for (const char* key : {"name", "anchor", "value", "threshold", "passed", "detail"})
            if (!row.contains(key)) return std::string("check row missing '") + key + "'";
        if (!row["anchor"].is_string() || row["anchor"].get<std::string>().empty())
            return "check row '" + row["name"].dump() + "' has no anchor";
        if (!row["passed"].is_boolean()) return "check row passed must be a boolean";
        all = all && row["passed"].get<bool>();
    }
    if (all != doc["passed"].get<bool>()) return "top-level passed disagrees with check rows";
    return {};
}

}  // namespace stablab
