#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loccurve/curve.hpp"
#include "loccurve/error.hpp"
#include "loccurve/estimators.hpp"
#include "loccurve/grid.hpp"

namespace loccurve {

/// A function with analytic first and second derivatives.
struct test_function {
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
};

/// Builds a test_function after checking d1 and d2 against central differences.
inline test_function make_test_function(std::string name, std::function<double(double)> value,
                                        std::function<double(double)> d1, std::function<double(double)> d2) {
    constexpr double step = 1e-4;
    constexpr double tolerance = 1e-6;
    for (const double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double num1 = (value(x + step) - value(x - step)) / (2 * step);
        const double num2 = (d1(x + step) - d1(x - step)) / (2 * step);
        const double ana1 = d1(x);
        const double ana2 = d2(x);
        if (std::abs(num1 - ana1) > tolerance * std::max(1.0, std::abs(ana1)) ||
            std::abs(num2 - ana2) > tolerance * std::max(1.0, std::abs(ana2))) {
            throw error(error_code::invalid_request,
                        "derivatives of '" + name + "' disagree with central differences at x = " + std::to_string(x));
        }
    }
    return {std::move(name), std::move(value), std::move(d1), std::move(d2)};
}

inline const std::vector<test_function>& test_functions() {
    static const std::vector<test_function> registry = [] {
        std::vector<test_function> fns;
        fns.push_back(make_test_function(
            "quartic-sine", [](double x) { return x * x * x * x + std::sin(x); },
            [](double x) { return 4 * x * x * x + std::cos(x); }, [](double x) { return 12 * x * x - std::sin(x); }));
        fns.push_back(make_test_function(
            "quadratic", [](double x) { return 3 * x * x - 2 * x + 1; }, [](double x) { return 6 * x - 2; },
            [](double) { return 6.0; }));
        fns.push_back(make_test_function(
            "exp", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); },
            [](double x) { return std::exp(x); }));
        return fns;
    }();
    return registry;
}

inline const test_function& find_test_function(std::string_view name) {
    for (const auto& fn : test_functions()) {
        if (fn.name == name) return fn;
    }
    throw error(error_code::unknown_function, "no test function named '" + std::string(name) + "'");
}

/// log₂(err_coarse / err_fine).
inline double eoc(double err_coarse, double err_fine) {
    if (!(err_coarse > 0) || !(err_fine > 0)) {
        throw error(error_code::non_positive_error, "order of convergence needs two positive errors");
    }
    return std::log2(err_coarse / err_fine);
}

enum class grid_mode { uniform, ratio };

struct convergence_row {
    int j;
    double step;   // Hᵢ = 2⁻ʲ
    double h_bar;  // max(hᵢ, hᵢ₊₁)
    double err1;   // |S(τ) − F(τ)|
    double err2;   // |f1_est − F′(τ)|
    double err3;   // |f2_est − F″(τ)|
    double raw_err2;  // |S′(τ) − F′(τ)|
    double raw_err3;  // |S″(τ) − F″(τ)|
    std::optional<double> eoc1, eoc2, eoc3;
};

struct experiment_config {
    grid_mode mode = grid_mode::uniform;
    double ratio = 1.0;
    int j_min = 5;
    int j_max = 9;
    double center = 0.5;
};

/// Three knots {c − H, c, c + ratio·H}, α = β = 1/2, one row per H = 2⁻ʲ.
inline std::vector<convergence_row> run_experiment(const test_function& fn, const experiment_config& config) {
    if (config.mode == grid_mode::uniform && config.ratio != 1.0) {
        throw error(error_code::invalid_request, "uniform mode requires ratio 1");
    }
    if (!(config.ratio > 0) || !std::isfinite(config.ratio)) {
        throw error(error_code::invalid_request, "ratio must be positive");
    }
    if (config.j_min < 0 || config.j_max < config.j_min || config.j_max > 60) {
        throw error(error_code::invalid_request, "refinement range must satisfy 0 <= j_min <= j_max <= 60");
    }

    const double c = config.center;
    const auto eoc_or_empty = [](double coarse, double fine) -> std::optional<double> {
        if (coarse > 0 && fine > 0) return eoc(coarse, fine);
        return std::nullopt;
    };

    std::vector<convergence_row> rows;
    for (int j = config.j_min; j <= config.j_max; ++j) {
        const double step = std::ldexp(1.0, -j);
        std::vector<double> tau{c - step, c, c + config.ratio * step};
        std::vector<double> values{fn.value(tau[0]), fn.value(tau[1]), fn.value(tau[2])};
        const piecewise_curve curve(primary_grid(std::move(tau), std::move(values)), knot_placement::midpoint(3));
        const knot_estimate est = estimate_at_knot(curve, 1);

        convergence_row row{};
        row.j = j;
        row.step = step;
        row.h_bar = est.h_bar;
        row.err1 = std::abs(est.delta1);
        row.err2 = std::abs(est.f1_est - fn.d1(c));
        row.err3 = std::abs(est.f2_est - fn.d2(c));
        row.raw_err2 = std::abs(est.delta2_raw - fn.d1(c));
        row.raw_err3 = std::abs(curve.evaluate(c, 2) - fn.d2(c));
        if (!rows.empty()) {
            const auto& prev = rows.back();
            row.eoc1 = eoc_or_empty(prev.err1, row.err1);
            row.eoc2 = eoc_or_empty(prev.err2, row.err2);
            row.eoc3 = eoc_or_empty(prev.err3, row.err3);
        }
        rows.push_back(row);
    }
    return rows;
}

inline std::vector<convergence_row> run_experiment(const test_function& fn, grid_mode mode, double ratio = 1.0,
                                                   int j_min = 5, int j_max = 9, double center = 0.5) {
    return run_experiment(fn, experiment_config{mode, ratio, j_min, j_max, center});
}

/// Human-readable table, five significant digits, columns as H, err1, EOC, err2, EOC, err3, EOC.
inline std::string format_table(const std::vector<convergence_row>& rows) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-10s  %-11s %-7s  %-11s %-7s  %-11s %-7s\n", "H", "err1", "EOC", "err2", "EOC",
                  "err3", "EOC");
    out += line;
    const auto order = [](const std::optional<double>& v) {
        char buf[32];
        if (v) {
            std::snprintf(buf, sizeof buf, "%.4f", *v);
        } else {
            std::snprintf(buf, sizeof buf, "-");
        }
        return std::string(buf);
    };
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-10.3e  %-11.4e %-7s  %-11.4e %-7s  %-11.4e %-7s\n", r.step, r.err1,
                      order(r.eoc1).c_str(), r.err2, order(r.eoc2).c_str(), r.err3, order(r.eoc3).c_str());
        out += line;
    }
    return out;
}

}  // namespace loccurve
