#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace owt {

/// One `key = value` line of a flat configuration or data file.
struct KeyValueEntry {
    std::string key;
    std::string value;
    int line = 0;
};

/// Ordered key-value document. Blank lines and `#` comments are skipped;
/// duplicate keys are rejected.
class KeyValueFile {
public:
    static KeyValueFile parse(std::istream& in);
    static KeyValueFile parse_string(const std::string& text);
    static KeyValueFile load(const std::string& path);

    const std::vector<KeyValueEntry>& entries() const { return entries_; }
    const KeyValueEntry* find(const std::string& key) const;
    /// Throws ConfigError naming the key when absent.
    const KeyValueEntry& require(const std::string& key) const;

private:
    std::vector<KeyValueEntry> entries_;
};

}  // namespace owt
