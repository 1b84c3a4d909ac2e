#include "owt/cli/output.hpp"

#include <cmath>
#include <cstdlib>

#include <json.hpp>

#include "owt/cli/config.hpp"
#include "owt/errors.hpp"

namespace owt::cli {

void ScanResult::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::logic_error("row has " + std::to_string(row.size()) + " cells, schema has " +
                               std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw ConfigError("unknown format '" + name + "' (use csv or json)");
}

namespace {

std::string csv_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch == '\n' ? ' ' : ch;
    }
    return quoted + "\"";
}

nlohmann::ordered_json json_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        // Round through the CSV text so both formats carry the same digits.
        return std::strtod(format_number(*d).c_str(), nullptr);
    }
    return std::get<std::string>(c);
}

}  // namespace

void write_csv(std::ostream& out, const ScanResult& result) {
    out << "# owt " << result.command << '\n';
    for (const auto& [k, v] : result.config) out << "# " << k << " = " << v << '\n';
    for (const auto& [k, v] : result.info) out << "#% " << k << " = " << v << '\n';
    for (std::size_t i = 0; i < result.columns.size(); ++i)
        out << (i ? "," : "") << result.columns[i];
    out << '\n';
    for (const auto& row : result.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
        out << '\n';
    }
}

void write_json(std::ostream& out, const ScanResult& result) {
    nlohmann::ordered_json doc;
    doc["command"] = result.command;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto& [k, v] : result.config) config[k] = v;
    nlohmann::ordered_json info = nlohmann::ordered_json::object();
    for (const auto& [k, v] : result.info) info[k] = v;
    doc["config"] = config;
    doc["info"] = info;
    doc["columns"] = result.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : result.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& c : row) r.push_back(json_cell(c));
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(1) << '\n';
}

void write(std::ostream& out, const ScanResult& result, Format format) {
    if (format == Format::Csv)
        write_csv(out, result);
    else
        write_json(out, result);
}

}  // namespace owt::cli
