#include "owt/keyvalue.hpp"

#include <fstream>
#include <sstream>

#include "owt/errors.hpp"
#include "owt/units.hpp"

namespace owt {

KeyValueFile KeyValueFile::parse(std::istream& in) {
    KeyValueFile file;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = units::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
        std::string key(units::trim(line.substr(0, eq)));
        std::string value(units::trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (value.empty()) throw ConfigError("empty value for '" + key + "'", line_no);
        if (file.find(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
        file.entries_.push_back({std::move(key), std::move(value), line_no});
    }
    return file;
}

KeyValueFile KeyValueFile::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

KeyValueFile KeyValueFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    return parse(in);
}

const KeyValueEntry* KeyValueFile::find(const std::string& key) const {
    for (const auto& e : entries_)
        if (e.key == key) return &e;
    return nullptr;
}

const KeyValueEntry& KeyValueFile::require(const std::string& key) const {
    if (const auto* e = find(key)) return *e;
    throw ConfigError("missing required key '" + key + "'");
}

}  // namespace owt
