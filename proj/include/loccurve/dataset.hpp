#pragma once

#include <charconv>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "loccurve/error.hpp"
#include "loccurve/grid.hpp"

namespace loccurve {

/// Data points (τ, F) as read from a file or request body.
struct dataset {
    std::string name;
    std::vector<double> tau;
    std::vector<double> values;

    std::size_t size() const noexcept { return tau.size(); }
    primary_grid to_grid() const { return primary_grid(tau, values); }
};

enum class data_format { csv, json };

/// Rejects inputs the curve cannot be built on. Unsorted data is an error, never re-sorted.
inline void validate_dataset(const dataset& data) {
    if (data.tau.size() != data.values.size()) {
        throw error(error_code::length_mismatch, std::to_string(data.tau.size()) + " tau values but " +
                                                     std::to_string(data.values.size()) + " F values");
    }
    for (std::size_t k = 0; k < data.size(); ++k) {
        if (!std::isfinite(data.tau[k]) || !std::isfinite(data.values[k])) {
            throw error(error_code::parse_error, "non-finite data point", k + 1);
        }
    }
    for (std::size_t k = 1; k < data.size(); ++k) {
        if (!(data.tau[k] > data.tau[k - 1])) {
            throw error(error_code::not_strictly_increasing,
                        "tau = " + std::to_string(data.tau[k]) + " does not exceed its predecessor", k + 1);
        }
    }
    if (data.size() < 3) {
        throw error(error_code::invalid_grid, "at least 3 data points are required, got " + std::to_string(data.size()));
    }
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_number(std::string_view text, std::size_t line) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw error(error_code::parse_error, "line " + std::to_string(line) + ": '" + std::string(text) +
                                                 "' is not a number");
    }
    return value;
}

inline std::vector<double> number_array(const nlohmann::json& node, const char* key) {
    if (!node.contains(key) || !node[key].is_array()) {
        throw error(error_code::parse_error, std::string("field '") + key + "' must be an array of numbers");
    }
    std::vector<double> out;
    out.reserve(node[key].size());
    for (const auto& v : node[key]) {
        if (!v.is_number()) {
            throw error(error_code::parse_error, std::string("field '") + key + "' must contain only numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

inline dataset parse_csv(std::string_view text) {
    dataset out;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        const std::string_view raw = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            throw error(error_code::parse_error, "line " + std::to_string(line_no) + ": expected two comma-separated fields");
        }
        if (!header_seen) {
            if (trim(line.substr(0, comma)) != "tau" || trim(line.substr(comma + 1)) != "F") {
                throw error(error_code::parse_error, "CSV header must be 'tau,F'");
            }
            header_seen = true;
            continue;
        }
        out.tau.push_back(parse_number(line.substr(0, comma), line_no));
        out.values.push_back(parse_number(line.substr(comma + 1), line_no));
    }
    if (!header_seen) {
        throw error(error_code::parse_error, "empty CSV input");
    }
    return out;
}

}  // namespace detail

/// Reads a JSON object {"tau": [...], "F": [...], "name"?: "..."}.
inline dataset dataset_from_json(const nlohmann::json& node) {
    if (!node.is_object()) {
        throw error(error_code::parse_error, "dataset must be a JSON object");
    }
    dataset out;
    out.tau = detail::number_array(node, "tau");
    out.values = detail::number_array(node, "F");
    if (node.contains("name") && node["name"].is_string()) {
        out.name = node["name"].get<std::string>();
    }
    validate_dataset(out);
    return out;
}

inline dataset parse_dataset(std::string_view bytes, data_format format) {
    if (format == data_format::csv) {
        dataset out = detail::parse_csv(bytes);
        validate_dataset(out);
        return out;
    }
    nlohmann::json node;
    try {
        node = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw error(error_code::parse_error, e.what());
    }
    return dataset_from_json(node);
}

inline nlohmann::json to_json(const dataset& data) {
    nlohmann::json out = {{"tau", data.tau}, {"F", data.values}};
    if (!data.name.empty()) out["name"] = data.name;
    return out;
}

/// A bundled dataset plus named secondary-knot presets.
struct fixture {
    dataset data;
    std::map<std::string, std::vector<double>> presets;
};

inline const std::vector<fixture>& fixtures() {
    static const std::vector<fixture> all = [] {
        fixture fc;
        fc.data.name = "fritsch-carlson";
        fc.data.tau = {7.99, 8.09, 8.19, 8.7, 9.2, 10.0, 12.0, 15.0, 20.0};
        fc.data.values = {0.0,      0.0000276429, 0.0437498, 0.169183, 0.469428,
                          0.94374,  0.998636,     0.999919,  0.999994};
        fc.presets["exp1"] = {7.99, 8.14, 8.445, 8.95, 9.6, 11.0, 13.5, 20.0};
        fc.presets["exp2"] = {7.99, 8.14, 8.445, 8.95, 9.6, 10.1, 12.1, 20.0};
        return std::vector<fixture>{fc};
    }();
    return all;
}

inline const fixture* find_fixture(std::string_view name) {
    for (const auto& f : fixtures()) {
        if (f.data.name == name) return &f;
    }
    return nullptr;
}

inline nlohmann::json to_json(const fixture& f) {
    nlohmann::json out = to_json(f.data);
    nlohmann::json presets = nlohmann::json::object();
    for (const auto& [name, x] : f.presets) presets[name] = {{"x", x}};
    out["presets"] = presets;
    return out;
}

}  // namespace loccurve
