#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlab {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class KeyKind { real, integer, boolean, text, real_list };

struct KeySpec {
    std::string name;  // dotted, e.g. "grid.nx"
    KeyKind kind = KeyKind::real;
    std::string fallback;  // built-in default, in file syntax
    double lo = -1e300, hi = 1e300;  // inclusive range for numbers and list entries
    std::vector<std::string> choices;  // allowed values for text keys, empty means any
    std::string doc;
};

// Keys every subcommand accepts (alpha, seed) plus the subcommand's own table.
// Throws ConfigError for an unknown subcommand.
const std::vector<KeySpec>& config_schema(const std::string& subcommand);
const std::vector<std::string>& subcommands();

// Quantities computed from alpha or other keys; naming one is an error.
bool is_derived_key(const std::string& key);

class Config {
public:
    // built-in defaults of the subcommand
    explicit Config(const std::string& subcommand);

    const std::string& subcommand() const { return sub_; }

    // INI text: "key = value" lines, "[section]" headers, '#' or ';' comments.
    // Errors carry the line number.
    void merge_text(const std::string& text, const std::string& origin = "<text>");
    void merge_file(const std::string& path);
    // "section.key=value"
    void apply_override(const std::string& assignment);
    void set(const std::string& key, const std::string& value);

    double real(const std::string& key) const;
    std::int64_t integer(const std::string& key) const;
    bool boolean(const std::string& key) const;
    const std::string& text(const std::string& key) const;
    std::vector<double> real_list(const std::string& key) const;

    // resolved values in key order
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    const KeySpec& spec(const std::string& key) const;
    std::string sub_;
    std::map<std::string, std::string> values_;
};

}  // namespace dlab
