#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "loccurve/error.hpp"

namespace loccurve {

/// Relative guard applied to every division by a knot spacing.
inline constexpr double length_guard = 1e-14;

namespace detail {

/// w·far + (1 − w)·near; the single expression for every secondary knot and chord value.
template <std::floating_point Real>
Real blend(Real w, Real far, Real near) {
    return w * far + (1 - w) * near;
}

template <std::floating_point Real>
bool is_degenerate_length(Real length, Real a, Real b) {
    const Real scale = std::max({std::abs(a), std::abs(b), Real(1)});
    return !(length > Real(length_guard) * scale);
}

}  // namespace detail

/// Data abscissas τ₁ < … < τ_N with their values F₁…F_N (stored 0-based).
template <std::floating_point Real>
class basic_primary_grid {
public:
    basic_primary_grid(std::vector<Real> tau, std::vector<Real> values)
        : tau_(std::move(tau)), values_(std::move(values)) {
        if (tau_.size() != values_.size()) {
            throw error(error_code::length_mismatch,
                        std::to_string(tau_.size()) + " abscissas but " + std::to_string(values_.size()) + " values");
        }
        if (tau_.size() < 3) {
            throw error(error_code::invalid_grid, "at least 3 knots are required, got " + std::to_string(tau_.size()));
        }
        for (std::size_t k = 0; k < tau_.size(); ++k) {
            if (!std::isfinite(tau_[k]) || !std::isfinite(values_[k])) {
                throw error(error_code::invalid_grid, "non-finite data point", k + 1);
            }
        }
        for (std::size_t k = 1; k < tau_.size(); ++k) {
            if (detail::is_degenerate_length(tau_[k] - tau_[k - 1], tau_[k - 1], tau_[k])) {
                throw error(error_code::invalid_grid, "abscissas must be strictly increasing", k + 1);
            }
        }
    }

    std::size_t size() const noexcept { return tau_.size(); }
    Real tau(std::size_t k) const { return tau_[k]; }
    Real value(std::size_t k) const { return values_[k]; }
    /// Width of the interval [τ_{k−1}, τ_k]; k ≥ 1.
    Real step(std::size_t k) const { return tau_[k] - tau_[k - 1]; }

    std::span<const Real> taus() const noexcept { return tau_; }
    std::span<const Real> values() const noexcept { return values_; }

private:
    std::vector<Real> tau_;
    std::vector<Real> values_;
};

/// Free parameters α₂ and β₂…β_{N−1} that place the secondary knots.
///
/// α₃…α_{N−1} are not stored: segment k uses α = 1 − β of segment k−1.
template <std::floating_point Real>
class basic_knot_placement {
public:
    basic_knot_placement(Real alpha2, std::vector<Real> beta) : alpha2_(alpha2), beta_(std::move(beta)) {
        if (beta_.empty()) {
            throw error(error_code::invalid_placement, "placement needs at least one beta");
        }
        if (!(alpha2_ > 0 && alpha2_ <= 1)) {
            throw error(error_code::invalid_placement, "alpha2 must lie in (0, 1]", 2);
        }
        for (std::size_t k = 0; k < beta_.size(); ++k) {
            const bool last = k + 1 == beta_.size();
            const Real b = beta_[k];
            if (!(b > 0 && (last ? b <= 1 : b < 1))) {
                throw error(error_code::invalid_placement,
                            last ? "last beta must lie in (0, 1]" : "interior beta must lie in (0, 1)", k + 2);
            }
        }
    }

    /// α₂ = 1, β_{N−1} = 1 (curve passes through F₁ and F_N), interior β = 1/2.
    static basic_knot_placement clamped_midpoint(std::size_t knot_count) {
        if (knot_count < 3) {
            throw error(error_code::invalid_grid, "at least 3 knots are required");
        }
        std::vector<Real> beta(knot_count - 2, Real(0.5));
        beta.back() = 1;
        return basic_knot_placement(1, std::move(beta));
    }

    /// α = β = 1/2 everywhere, ends not clamped.
    static basic_knot_placement midpoint(std::size_t knot_count) {
        if (knot_count < 3) {
            throw error(error_code::invalid_grid, "at least 3 knots are required");
        }
        return basic_knot_placement(Real(0.5), std::vector<Real>(knot_count - 2, Real(0.5)));
    }

    Real alpha2() const noexcept { return alpha2_; }
    std::span<const Real> betas() const noexcept { return beta_; }
    std::size_t segment_count() const noexcept { return beta_.size(); }

    /// α of segment k (0-based; segment k is centred on τ_{k+2} in 1-based terms).
    Real alpha(std::size_t k) const { return k == 0 ? alpha2_ : 1 - beta_[k - 1]; }
    Real beta(std::size_t k) const { return beta_[k]; }

private:
    Real alpha2_;
    std::vector<Real> beta_;
};

/// Secondary knots x₂…x_N and per-segment half lengths hᵢ = αᵢHᵢ, hᵢ₊₁ = βᵢHᵢ₊₁.
template <std::floating_point Real>
struct basic_secondary_grid {
    std::vector<Real> x;
    std::vector<Real> h_lo;
    std::vector<Real> h_hi;

    std::size_t segment_count() const noexcept { return h_lo.size(); }
};

template <std::floating_point Real>
void check_compatible(const basic_primary_grid<Real>& grid, const basic_knot_placement<Real>& placement) {
    if (placement.segment_count() + 2 != grid.size()) {
        throw error(error_code::invalid_placement,
                    "expected " + std::to_string(grid.size() - 2) + " beta values for " + std::to_string(grid.size()) +
                        " knots, got " + std::to_string(placement.segment_count()));
    }
}

namespace detail {

/// Weight that places secondary knot j (0-based, x₂ is j = 0) between τ_j and τ_{j+1}.
template <std::floating_point Real>
Real knot_weight(const basic_knot_placement<Real>& placement, std::size_t j) {
    return j == 0 ? placement.alpha2() : placement.beta(j - 1);
}

template <std::floating_point Real>
Real knot_abscissa(const basic_primary_grid<Real>& grid, const basic_knot_placement<Real>& placement, std::size_t j) {
    const Real w = knot_weight(placement, j);
    return j == 0 ? blend(w, grid.tau(0), grid.tau(1)) : blend(w, grid.tau(j + 1), grid.tau(j));
}

}  // namespace detail

template <std::floating_point Real>
basic_secondary_grid<Real> build_secondary_grid(const basic_primary_grid<Real>& grid,
                                                const basic_knot_placement<Real>& placement) {
    check_compatible(grid, placement);
    const std::size_t segments = placement.segment_count();

    basic_secondary_grid<Real> out;
    out.x.resize(segments + 1);
    out.h_lo.resize(segments);
    out.h_hi.resize(segments);

    for (std::size_t j = 0; j <= segments; ++j) {
        out.x[j] = detail::knot_abscissa(grid, placement, j);
    }
    for (std::size_t k = 0; k < segments; ++k) {
        out.h_lo[k] = placement.alpha(k) * grid.step(k + 1);
        out.h_hi[k] = placement.beta(k) * grid.step(k + 2);
    }
    return out;
}

/// Inverse of build_secondary_grid: recovers α₂, β from explicit knots x₂…x_N.
template <std::floating_point Real>
basic_knot_placement<Real> placement_from_knots(const basic_primary_grid<Real>& grid, std::span<const Real> x) {
    const std::size_t n = grid.size();
    if (x.size() != n - 1) {
        throw error(error_code::length_mismatch,
                    "expected " + std::to_string(n - 1) + " secondary knots, got " + std::to_string(x.size()));
    }
    for (std::size_t k = 0; k < x.size(); ++k) {
        const Real lo = grid.tau(k);
        const Real hi = grid.tau(k + 1);
        const bool first = k == 0;
        const bool last = k + 1 == x.size();
        const bool ok = std::isfinite(x[k]) && (first ? x[k] >= lo : x[k] > lo) && (last ? x[k] <= hi : x[k] < hi);
        if (!ok) {
            const std::string open = first ? "[" : "(";
            const std::string close = last ? "]" : ")";
            throw error(error_code::knot_out_of_interval,
                        "knot " + std::to_string(x[k]) + " outside " + open + std::to_string(lo) + ", " +
                            std::to_string(hi) + close,
                        k + 2);
        }
    }

    const Real alpha2 = (grid.tau(1) - x[0]) / grid.step(1);
    std::vector<Real> beta(n - 2);
    for (std::size_t k = 0; k < beta.size(); ++k) {
        beta[k] = (x[k + 1] - grid.tau(k + 1)) / grid.step(k + 2);
    }
    return basic_knot_placement<Real>(alpha2, std::move(beta));
}

using primary_grid = basic_primary_grid<double>;
using knot_placement = basic_knot_placement<double>;
using secondary_grid = basic_secondary_grid<double>;

}  // namespace loccurve
