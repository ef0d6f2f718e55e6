#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <cstdio>

#include "json.hpp"
#include "loccurve/convergence.hpp"
#include "loccurve/curve.hpp"
#include "loccurve/dataset.hpp"
#include "loccurve/error.hpp"
#include "loccurve/estimators.hpp"
#include "loccurve/grid.hpp"
#include "loccurve/segment.hpp"

namespace loccurve {

inline constexpr std::size_t default_samples = 200;
inline constexpr std::size_t max_samples = 1'000'000;

/// Turns a knot specification into a placement for `grid`.
///
/// Accepted forms: null (clamped ends, interior β = 1/2), an array of knots
/// x₂…x_N, {"x": [...]}, or {"alpha2": a, "beta": [...]}.
inline knot_placement resolve_placement(const primary_grid& grid, const nlohmann::json& spec) {
    if (spec.is_null()) {
        return knot_placement::clamped_midpoint(grid.size());
    }
    if (spec.is_array()) {
        return resolve_placement(grid, nlohmann::json{{"x", spec}});
    }
    if (!spec.is_object()) {
        throw error(error_code::parse_error, "knot specification must be an object or an array");
    }
    if (spec.contains("x")) {
        const std::vector<double> x = detail::number_array(spec, "x");
        return placement_from_knots<double>(grid, x);
    }
    if (spec.contains("alpha2") && spec.contains("beta")) {
        if (!spec["alpha2"].is_number()) {
            throw error(error_code::parse_error, "field 'alpha2' must be a number");
        }
        knot_placement placement(spec["alpha2"].get<double>(), detail::number_array(spec, "beta"));
        check_compatible(grid, placement);
        return placement;
    }
    throw error(error_code::parse_error, "knot specification needs 'x' or both 'alpha2' and 'beta'");
}

struct curve_request {
    dataset data;
    nlohmann::json knots;  // null, knots or placement; see resolve_placement
    std::size_t samples = default_samples;
};

/// Body of POST /api/curve: {tau, F, knots? | placement?, samples?}.
inline curve_request parse_curve_request(const nlohmann::json& body) {
    if (!body.is_object()) {
        throw error(error_code::parse_error, "request body must be a JSON object");
    }
    curve_request req;
    req.data = dataset_from_json(body);
    if (body.contains("knots") && body.contains("placement")) {
        throw error(error_code::invalid_request, "give either 'knots' or 'placement', not both");
    }
    if (body.contains("knots")) req.knots = body["knots"];
    if (body.contains("placement")) req.knots = body["placement"];
    if (body.contains("samples")) {
        const auto& s = body["samples"];
        if (!s.is_number_integer() || s.get<long long>() < 2 || s.get<long long>() > static_cast<long long>(max_samples)) {
            throw error(error_code::invalid_request, "'samples' must be an integer in [2, " + std::to_string(max_samples) + "]");
        }
        req.samples = s.get<std::size_t>();
    }
    return req;
}

inline piecewise_curve build_curve(const curve_request& req) {
    primary_grid grid = req.data.to_grid();
    knot_placement placement = resolve_placement(grid, req.knots);
    return piecewise_curve(std::move(grid), std::move(placement));
}

inline nlohmann::json to_json(const segment& s) {
    return {{"x_lo", s.x_lo()}, {"x_hi", s.x_hi()}, {"f_lo", s.f_lo()}, {"f_hi", s.f_hi()},
            {"d_lo", s.d_lo()}, {"d_hi", s.d_hi()}, {"A", s.a()},       {"B", s.b()}};
}

/// Rebuilds a segment from its endpoint data; A and B are recomputed, not read.
inline segment segment_from_json(const nlohmann::json& node) {
    const auto field = [&](const char* key) {
        if (!node.contains(key) || !node[key].is_number()) {
            throw error(error_code::parse_error, std::string("segment field '") + key + "' missing");
        }
        return node[key].get<double>();
    };
    return segment::from_endpoint_data(field("x_lo"), field("x_hi"), field("f_lo"), field("f_hi"), field("d_lo"),
                                       field("d_hi"));
}

inline nlohmann::json to_json(const knot_estimate& e) {
    return {{"i", e.knot + 1},        {"tau", e.tau},       {"C1", e.c1},         {"C2", e.c2},
            {"f1_est", e.f1_est},     {"f2_est", e.f2_est}, {"delta1", e.delta1}, {"delta2_raw", e.delta2_raw}};
}

/// One entry per interior knot; a knot whose estimate cannot be formed carries the error instead.
inline nlohmann::json knot_estimates_json(const piecewise_curve& curve) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t knot = 1; knot + 1 < curve.grid().size(); ++knot) {
        try {
            out.push_back(to_json(estimate_at_knot(curve, knot)));
        } catch (const error& e) {
            out.push_back({{"i", knot + 1}, {"tau", curve.grid().tau(knot)}, {"error", std::string(e.name())}, {"detail", e.detail()}});
        }
    }
    return out;
}

/// Equally spaced abscissas on [lower, upper], both ends included exactly.
inline std::vector<double> sample_abscissas(double lower, double upper, std::size_t count) {
    std::vector<double> xs(count);
    const double width = upper - lower;
    for (std::size_t k = 0; k < count; ++k) {
        xs[k] = lower + width * (static_cast<double>(k) / static_cast<double>(count - 1));
    }
    xs.front() = lower;
    xs.back() = upper;
    return xs;
}

inline nlohmann::json curve_response(const piecewise_curve& curve, std::size_t samples) {
    nlohmann::json segments = nlohmann::json::array();
    for (const auto& s : curve.segments()) segments.push_back(to_json(s));

    nlohmann::json points = nlohmann::json::array();
    for (const double x : sample_abscissas(curve.lower(), curve.upper(), samples)) {
        points.push_back({{"x", x}, {"S", curve.evaluate(x, 0)}, {"dS", curve.evaluate(x, 1)}, {"d2S", curve.evaluate(x, 2)}});
    }

    return {{"knots", curve.secondary().x},
            {"segments", std::move(segments)},
            {"samples", std::move(points)},
            {"knot_estimates", knot_estimates_json(curve)}};
}

/// Serialized CurveResponse; the CLI and the HTTP service both go through here.
inline std::string render_curve_response(const curve_request& req) {
    return curve_response(build_curve(req), req.samples).dump();
}

inline nlohmann::json error_json(const error& e) {
    nlohmann::json out = {{"error", std::string(e.name())}, {"detail", e.detail()}};
    if (e.index()) out["index"] = *e.index();
    return out;
}

inline nlohmann::json to_json(const convergence_row& r) {
    const auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    return {{"j", r.j},           {"H", r.step},           {"h_bar", r.h_bar},      {"err1", r.err1},
            {"err2", r.err2},     {"err3", r.err3},        {"raw_err2", r.raw_err2}, {"raw_err3", r.raw_err3},
            {"eoc1", opt(r.eoc1)}, {"eoc2", opt(r.eoc2)}, {"eoc3", opt(r.eoc3)}};
}

namespace detail {

inline std::string csv_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_number(const std::optional<double>& v) { return v ? csv_number(*v) : std::string(); }

}  // namespace detail

inline std::string rows_to_csv(const std::vector<convergence_row>& rows) {
    std::string out = "j,H,h_bar,err1,eoc1,err2,eoc2,err3,eoc3,raw_err2,raw_err3\n";
    for (const auto& r : rows) {
        out += std::to_string(r.j);
        for (const auto& cell : {detail::csv_number(r.step), detail::csv_number(r.h_bar), detail::csv_number(r.err1),
                                 detail::csv_number(r.eoc1), detail::csv_number(r.err2), detail::csv_number(r.eoc2),
                                 detail::csv_number(r.err3), detail::csv_number(r.eoc3), detail::csv_number(r.raw_err2),
                                 detail::csv_number(r.raw_err3)}) {
            out += ',';
            out += cell;
        }
        out += '\n';
    }
    return out;
}

inline std::string samples_to_csv(const piecewise_curve& curve, std::size_t samples) {
    std::string out = "x,S,dS,d2S\n";
    for (const double x : sample_abscissas(curve.lower(), curve.upper(), samples)) {
        out += detail::csv_number(x) + ',' + detail::csv_number(curve.evaluate(x, 0)) + ',' +
               detail::csv_number(curve.evaluate(x, 1)) + ',' + detail::csv_number(curve.evaluate(x, 2)) + '\n';
    }
    return out;
}

inline std::string estimates_to_csv(const piecewise_curve& curve) {
    std::string out = "i,tau,C1,C2,f1_est,f2_est,delta1,delta2_raw\n";
    for (const auto& e : estimate_all(curve)) {
        out += std::to_string(e.knot + 1);
        for (const double v : {e.tau, e.c1, e.c2, e.f1_est, e.f2_est, e.delta1, e.delta2_raw}) {
            out += ',' + detail::csv_number(v);
        }
        out += '\n';
    }
    return out;
}

}  // namespace loccurve
