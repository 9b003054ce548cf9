#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plvkit/errors.hpp"

namespace plvkit {

// Ordered INI document. Duplicate sections and keys are preserved in file
// order (marker lists and repeated config keys rely on this).
struct IniSection {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;

    std::optional<std::string> get(const std::string& key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return v;
        return std::nullopt;
    }

    std::vector<std::string> get_all(const std::string& key) const {
        std::vector<std::string> out;
        for (const auto& [k, v] : entries)
            if (k == key) out.push_back(v);
        return out;
    }

    const std::string& require(const std::string& key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return v;
        throw parse_error("missing key '" + key + "' in section [" + name + "]");
    }
};

struct IniDocument {
    std::vector<std::string> prologue;  // verbatim lines before the first section
    std::vector<IniSection> sections;

    const IniSection* find(const std::string& name) const {
        for (const auto& s : sections)
            if (s.name == name) return &s;
        return nullptr;
    }

    const IniSection& require(const std::string& name) const {
        const IniSection* s = find(name);
        if (!s) throw parse_error("missing section [" + name + "]");
        return *s;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

// Parses INI-style text: [Section] headers, Key=Value entries, comments
// starting with ';' or '#'. Lines before the first section are kept verbatim
// (format magic lines live there).
inline IniDocument parse_ini(const std::string& text) {
    IniDocument doc;
    IniSection* current = nullptr;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string raw = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        pos = (eol == std::string::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        if (eol == std::string::npos && raw.empty()) break;

        std::string line = detail::trim(raw);
        if (line.empty() || line.front() == ';' || line.front() == '#') {
            if (!current && !line.empty()) doc.prologue.push_back(raw);
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']')
                throw parse_error("line " + std::to_string(line_no) + ": unterminated section header");
            doc.sections.push_back(IniSection{detail::trim(line.substr(1, line.size() - 2)), {}});
            current = &doc.sections.back();
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            if (!current) {
                doc.prologue.push_back(raw);
                continue;
            }
            throw parse_error("line " + std::to_string(line_no) + ": expected key=value");
        }
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw parse_error("line " + std::to_string(line_no) + ": empty key");
        if (!current)
            throw parse_error("line " + std::to_string(line_no) + ": key '" + key + "' outside any section");
        current->entries.emplace_back(std::move(key), std::move(value));
    }
    return doc;
}

// Numeric conversions with errors that name the offending key.
inline double to_double(const std::string& value, const std::string& context) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw parse_error("");
        return v;
    } catch (const std::exception&) {
        throw parse_error("value '" + value + "' for " + context + " is not a number");
    }
}

inline long long to_int(const std::string& value, const std::string& context) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(value, &used);
        if (used != value.size()) throw parse_error("");
        return v;
    } catch (const std::exception&) {
        throw parse_error("value '" + value + "' for " + context + " is not an integer");
    }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t at = s.find(sep, start);
        if (at == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, at - start));
        start = at + 1;
    }
    return parts;
}

}  // namespace plvkit
