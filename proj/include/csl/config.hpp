#pragma once

#include <cctype>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "csl/errors.hpp"

namespace csl {

// Flat `key = value` configuration file. Lines starting with '#' and blank
// lines are ignored. Values keep internal whitespace; keys may be dotted
// (e.g. "follow.homophily") but the namespace stays flat.
class FlatConfig {
public:
    FlatConfig() = default;

    static FlatConfig parse(std::istream& in, const std::string& source = "<config>") {
        FlatConfig cfg;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::string trimmed = trim(line);
            if (trimmed.empty() || trimmed[0] == '#') continue;
            const auto eq = trimmed.find('=');
            if (eq == std::string::npos) {
                throw ValidationError(source + ":" + std::to_string(line_no) +
                                      ": expected `key = value`, got \"" + trimmed + "\"");
            }
            const std::string key = trim(trimmed.substr(0, eq));
            const std::string value = trim(trimmed.substr(eq + 1));
            if (key.empty()) {
                throw ValidationError(source + ":" + std::to_string(line_no) + ": empty key");
            }
            if (cfg.values_.count(key)) {
                throw ValidationError(source + ":" + std::to_string(line_no) +
                                      ": duplicate key \"" + key + "\"");
            }
            cfg.values_[key] = value;
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    std::string require_string(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw ValidationError("missing config key \"" + key + "\"");
        return it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : parse_double(key, it->second);
    }

    long long get_int(const std::string& key, long long fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : parse_int(key, it->second);
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        const std::string& v = it->second;
        if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "off" || v == "no") return false;
        throw ValidationError("config key \"" + key + "\": expected boolean, got \"" + v + "\"");
    }

    std::vector<std::string> get_list(const std::string& key,
                                      const std::vector<std::string>& fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        return split_list(it->second);
    }

    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        std::vector<double> out;
        for (const auto& item : split_list(it->second)) out.push_back(parse_double(key, item));
        return out;
    }

    const std::map<std::string, std::string>& entries() const { return values_; }

    static std::vector<std::string> split_list(const std::string& raw) {
        std::vector<std::string> out;
        std::string item;
        std::stringstream ss(raw);
        while (std::getline(ss, item, ',')) {
            const std::string t = trim(item);
            if (!t.empty()) out.push_back(t);
        }
        return out;
    }

private:
    static std::string trim(const std::string& s) {
        std::size_t b = 0, e = s.size();
        while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
        return s.substr(b, e - b);
    }

    static double parse_double(const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ValidationError("config key \"" + key + "\": expected number, got \"" + v + "\"");
        }
    }

    static long long parse_int(const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            const long long i = std::stoll(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return i;
        } catch (const std::exception&) {
            throw ValidationError("config key \"" + key + "\": expected integer, got \"" + v +
                                  "\"");
        }
    }

    std::map<std::string, std::string> values_;
};

}  // namespace csl
