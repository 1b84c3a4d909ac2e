#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace owt::cli {

/// A table cell: a number (NaN marks a masked or missing value) or a label.
using Cell = std::variant<double, std::string>;

/// Column schema plus row-major data and the metadata header.
struct ScanResult {
    std::string command;
    /// Canonical configuration echo, written as `# key = value`.
    std::vector<std::pair<std::string, std::string>> config;
    /// Derived information (versions, corrections, summaries), written as `#% key = value`.
    std::vector<std::pair<std::string, std::string>> info;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

enum class Format { Csv, Json };

Format parse_format(const std::string& name);

/// Comma-separated values, LF line endings, numbers at 9 significant digits.
void write_csv(std::ostream& out, const ScanResult& result);
/// Same schema as the CSV; NaN becomes null.
void write_json(std::ostream& out, const ScanResult& result);
void write(std::ostream& out, const ScanResult& result, Format format);

}  // namespace owt::cli
