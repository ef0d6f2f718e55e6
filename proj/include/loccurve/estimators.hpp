#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "loccurve/curve.hpp"
#include "loccurve/error.hpp"
#include "loccurve/grid.hpp"

namespace loccurve {

/// Geometry of the segment that contains interior knot τ: half lengths on
/// either side and the two primary steps around τ.
template <std::floating_point Real>
struct basic_knot_geometry {
    Real h_lo;   // hᵢ = αᵢHᵢ
    Real h_hi;   // hᵢ₊₁ = βᵢHᵢ₊₁
    Real step_lo;  // Hᵢ
    Real step_hi;  // Hᵢ₊₁
    Real alpha;
    Real beta;

    Real h_bar() const { return std::max(h_lo, h_hi); }
};

/// Nodal quantities at interior knot τ_{knot+1} (knot is 0-based, 1 ≤ knot ≤ N−2).
template <std::floating_point Real>
struct basic_knot_estimate {
    std::size_t knot;
    Real tau;
    Real c1;
    Real c2;
    Real delta1;      // S(τ) − F(τ)
    Real delta2_raw;  // S′(τ), before correction
    Real f2_est;
    Real f1_est;
    Real h_bar;
};

namespace detail {

template <std::floating_point Real>
void check_interior_knot(std::size_t knot_count, std::size_t knot) {
    if (knot == 0 || knot + 1 >= knot_count) {
        throw error(error_code::index_out_of_range, "estimates exist only at interior knots", knot + 1);
    }
}

}  // namespace detail

template <std::floating_point Real>
basic_knot_geometry<Real> knot_geometry(const basic_primary_grid<Real>& grid,
                                        const basic_knot_placement<Real>& placement, std::size_t knot) {
    check_compatible(grid, placement);
    detail::check_interior_knot<Real>(grid.size(), knot);
    const std::size_t k = knot - 1;
    const Real alpha = placement.alpha(k);
    const Real beta = placement.beta(k);
    if (alpha < Real(length_guard) || beta < Real(length_guard)) {
        throw error(error_code::degenerate_placement, "alpha or beta too small", knot + 1);
    }
    const Real step_lo = grid.step(knot);
    const Real step_hi = grid.step(knot + 1);
    return {alpha * step_lo, beta * step_hi, step_lo, step_hi, alpha, beta};
}

// Both constants are the displayed bracket expressions reduced to a single
// fraction after substituting h/α = H and h/β = H′. C1 has no cancellation
// and is positive for every admissible placement.

/// Leading coefficient of S(τ) − F(τ) in units of F″(τ): h² h′² (H + H′) / (h + h′)³.
template <std::floating_point Real>
Real compute_c1(const basic_knot_geometry<Real>& g) {
    const Real sum = g.h_lo + g.h_hi;
    const Real prod = g.h_lo * g.h_hi;
    return prod * prod * (g.step_lo + g.step_hi) / (sum * sum * sum);
}

/// Leading coefficient of S′(τ) − F′(τ) in units of F″(τ).
template <std::floating_point Real>
Real compute_c2(const basic_knot_geometry<Real>& g) {
    const Real lo = g.h_lo;
    const Real hi = g.h_hi;
    const Real sum = lo + hi;
    const Real right = g.step_hi * lo * (4 * hi * hi - hi * lo + lo * lo);
    const Real left = g.step_lo * hi * (hi * hi - hi * lo + 4 * lo * lo);
    return (right - left) / (2 * sum * sum * sum);
}

template <std::floating_point Real>
Real compute_c1(const basic_primary_grid<Real>& grid, const basic_knot_placement<Real>& placement, std::size_t knot) {
    return compute_c1(knot_geometry(grid, placement, knot));
}

template <std::floating_point Real>
Real compute_c2(const basic_primary_grid<Real>& grid, const basic_knot_placement<Real>& placement, std::size_t knot) {
    return compute_c2(knot_geometry(grid, placement, knot));
}

/// F″(τ) ≈ (S(τ) − F(τ)) / C1 and F′(τ) ≈ S′(τ) − C2·F″(τ).
template <std::floating_point Real>
basic_knot_estimate<Real> estimate_at_knot(const basic_piecewise_curve<Real>& curve, std::size_t knot) {
    const auto& grid = curve.grid();
    const auto g = knot_geometry(grid, curve.placement(), knot);
    const Real c1 = compute_c1(g);
    const Real c2 = compute_c2(g);
    const Real h_bar = g.h_bar();
    if (!(std::abs(c1) >= Real(length_guard) * h_bar * h_bar)) {
        throw error(error_code::unstable_c1, "C1 = " + std::to_string(c1) + " is too small to divide by", knot + 1);
    }

    const Real tau = grid.tau(knot);
    basic_knot_estimate<Real> out{};
    out.knot = knot;
    out.tau = tau;
    out.c1 = c1;
    out.c2 = c2;
    out.h_bar = h_bar;
    out.delta1 = curve.evaluate(tau, 0) - grid.value(knot);
    out.delta2_raw = curve.evaluate(tau, 1);
    out.f2_est = out.delta1 / c1;
    out.f1_est = out.delta2_raw - c2 * out.f2_est;
    return out;
}

template <std::floating_point Real>
std::vector<basic_knot_estimate<Real>> estimate_all(const basic_piecewise_curve<Real>& curve) {
    std::vector<basic_knot_estimate<Real>> out;
    for (std::size_t knot = 1; knot + 1 < curve.grid().size(); ++knot) {
        out.push_back(estimate_at_knot(curve, knot));
    }
    return out;
}

using knot_geometry_t = basic_knot_geometry<double>;
using knot_estimate = basic_knot_estimate<double>;

}  // namespace loccurve
