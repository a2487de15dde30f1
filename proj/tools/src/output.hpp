// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <variant>
#include <vector>

namespace stablab::cli {

using Cell = std::variant<double, long long, std::string>;

/// Column-major description, row-major storage.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// Two-column series for plotdata/<name>.tsv.
struct Series {
    std::string name;
    std::string x_label, y_label;
    std::vector<double> x, y;
};

/// %.17g for doubles so that reruns can be compared byte for byte.
std::string format_double(double v);

/// CSV with a header row; strings are quoted when they contain ',', '"' or newlines.
std::string to_csv(const Table& t);

/// "# x_label\ty_label" header, then one tab-separated pair per line.
std::string to_tsv(const Series& s);

/// Writes `content` to `path`, creating parent directories. Throws
/// std::runtime_error on I/O failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace stablab::cli
