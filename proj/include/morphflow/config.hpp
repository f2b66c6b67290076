/**
 * @file config.hpp
 * @brief Flat key-value run configuration with section headers.
 *
 * Format: `[section]` headers, `key = value` lines, `#` comments, blank
 * lines ignored. Every lookup marks its key as consumed; after a command
 * has read its parameters, require_all_consumed() rejects anything left
 * over, so typos in key names fail loudly with file/line diagnostics
 * instead of silently using defaults.
 */
#ifndef MORPHFLOW_CONFIG_HPP
#define MORPHFLOW_CONFIG_HPP

#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace morphflow {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class Config {
  public:
    Config() = default;

    static Config from_file(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw ConfigError("config: cannot open " + path);
        std::ostringstream buf;
        buf << is.rdbuf();
        return from_string(buf.str(), path);
    }

    static Config from_string(const std::string& text, std::string origin = "<string>") {
        Config c;
        c.origin_ = std::move(origin);
        std::istringstream is(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const std::string t = strip(line);
            if (t.empty() || t[0] == '#') continue;
            if (t.front() == '[') {
                if (t.back() != ']')
                    throw ConfigError(c.where(lineno) + ": malformed section header: " + t);
                section = strip(t.substr(1, t.size() - 2));
                if (section.empty())
                    throw ConfigError(c.where(lineno) + ": empty section name");
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError(c.where(lineno) + ": expected key = value, got: " + t);
            const std::string key = strip(t.substr(0, eq));
            std::string value = strip(t.substr(eq + 1));
            const auto hash = value.find('#');
            if (hash != std::string::npos) value = strip(value.substr(0, hash));
            if (key.empty()) throw ConfigError(c.where(lineno) + ": empty key");
            if (section.empty())
                throw ConfigError(c.where(lineno) + ": key '" + key + "' outside any section");
            const auto [it, fresh] = c.entries_[section].emplace(key, Entry{value, lineno, false});
            if (!fresh)
                throw ConfigError(c.where(lineno) + ": duplicate key '" + section + "." + key +
                                  "' (first set at line " + std::to_string(it->second.line) + ")");
        }
        return c;
    }

    bool has_section(const std::string& section) const { return entries_.count(section) != 0; }

    bool has(const std::string& section, const std::string& key) const {
        const auto s = entries_.find(section);
        return s != entries_.end() && s->second.count(key) != 0;
    }

    std::vector<std::string> sections() const {
        std::vector<std::string> out;
        for (const auto& [name, kv] : entries_) out.push_back(name);
        return out;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
        const Entry* e = find(section, key);
        return e ? e->value : fallback;
    }

    std::string require_string(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        if (!e) throw ConfigError(origin_ + ": missing required key '" + section + "." + key + "'");
        return e->value;
    }

    double get_double(const std::string& section, const std::string& key, double fallback) const {
        const Entry* e = find(section, key);
        return e ? parse_double(*e, section, key) : fallback;
    }

    double require_double(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        if (!e) throw ConfigError(origin_ + ": missing required key '" + section + "." + key + "'");
        return parse_double(*e, section, key);
    }

    int get_int(const std::string& section, const std::string& key, int fallback) const {
        const Entry* e = find(section, key);
        if (!e) return fallback;
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(e->value, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != e->value.size())
            throw ConfigError(where(e->line) + ": key '" + section + "." + key +
                              "' is not an integer: " + e->value);
        return v;
    }

    /// Every key must have been consumed by a getter; leftovers are typos.
    void require_all_consumed() const {
        std::string bad;
        for (const auto& [section, kv] : entries_)
            for (const auto& [key, e] : kv)
                if (!e.consumed) {
                    if (!bad.empty()) bad += "; ";
                    bad += "'" + section + "." + key + "' (line " + std::to_string(e.line) + ")";
                }
        if (!bad.empty()) throw ConfigError(origin_ + ": unknown keys: " + bad);
    }

    /// Marks a whole section consumed, for blocks directed at other commands.
    void consume_section(const std::string& section) const {
        const auto s = entries_.find(section);
        if (s == entries_.end()) return;
        for (auto& [key, e] : s->second) e.consumed = true;
    }

    const std::string& origin() const { return origin_; }

  private:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool consumed = false;
    };

    static std::string strip(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return {};
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    std::string where(int line) const { return origin_ + ":" + std::to_string(line); }

    const Entry* find(const std::string& section, const std::string& key) const {
        const auto s = entries_.find(section);
        if (s == entries_.end()) return nullptr;
        const auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        k->second.consumed = true;
        return &k->second;
    }

    double parse_double(const Entry& e, const std::string& section, const std::string& key) const {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(e.value, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != e.value.size())
            throw ConfigError(where(e.line) + ": key '" + section + "." + key +
                              "' is not a number: " + e.value);
        return v;
    }

    std::string origin_;
    std::map<std::string, std::map<std::string, Entry>> entries_;
};

}  // namespace morphflow

#endif  // MORPHFLOW_CONFIG_HPP
