#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loccurve/error.hpp"
#include "loccurve/grid.hpp"
#include "loccurve/segment.hpp"

namespace loccurve {

/// The assembled C¹ curve S on [x₂, x_N]. Immutable once built.
template <std::floating_point Real>
class basic_piecewise_curve {
public:
    basic_piecewise_curve(basic_primary_grid<Real> grid, basic_knot_placement<Real> placement)
        : grid_(std::move(grid)), placement_(std::move(placement)) {
        secondary_ = build_secondary_grid(grid_, placement_);
        segments_.reserve(placement_.segment_count());
        for (std::size_t k = 0; k < placement_.segment_count(); ++k) {
            segments_.push_back(build_segment(grid_, placement_, k));
        }
    }

    const basic_primary_grid<Real>& grid() const noexcept { return grid_; }
    const basic_knot_placement<Real>& placement() const noexcept { return placement_; }
    const basic_secondary_grid<Real>& secondary() const noexcept { return secondary_; }
    std::span<const basic_segment<Real>> segments() const noexcept { return segments_; }
    const basic_segment<Real>& segment(std::size_t k) const { return segments_.at(k); }

    Real lower() const noexcept { return secondary_.x.front(); }
    Real upper() const noexcept { return secondary_.x.back(); }
    bool contains(Real x) const noexcept { return x >= lower() && x <= upper(); }

    /// Segment holding x; an interior knot belongs to the segment on its left.
    std::size_t locate_segment(Real x) const {
        if (!contains(x)) {
            throw error(error_code::out_of_domain, "x = " + std::to_string(x) + " outside [" +
                                                       std::to_string(lower()) + ", " + std::to_string(upper()) + "]");
        }
        const auto& knots = secondary_.x;
        const auto it = std::lower_bound(knots.begin() + 1, knots.end(), x);
        return static_cast<std::size_t>(it - (knots.begin() + 1));
    }

    /// S, S′ or S″ at x (order 0, 1, 2). S″ at an interior knot is the left limit.
    Real evaluate(Real x, int order = 0) const { return segments_[locate_segment(x)].eval(x, order); }

    /// Left and right limits of S^(order) at secondary knot j (0-based, 1 ≤ j ≤ N−3).
    std::pair<Real, Real> one_sided(std::size_t j, int order) const {
        if (j == 0 || j >= segments_.size()) {
            throw error(error_code::index_out_of_range, "not an interior secondary knot", j + 2);
        }
        const Real x = secondary_.x[j];
        return {segments_[j - 1].eval(x, order), segments_[j].eval(x, order)};
    }

private:
    basic_primary_grid<Real> grid_;
    basic_knot_placement<Real> placement_;
    basic_secondary_grid<Real> secondary_;
    std::vector<basic_segment<Real>> segments_;
};

template <std::floating_point Real>
basic_piecewise_curve<Real> build_curve(basic_primary_grid<Real> grid, basic_knot_placement<Real> placement) {
    return basic_piecewise_curve<Real>(std::move(grid), std::move(placement));
}

template <std::floating_point Real>
Real evaluate(const basic_piecewise_curve<Real>& curve, Real x, int order = 0) {
    return curve.evaluate(x, order);
}

template <std::floating_point Real>
std::size_t locate_segment(const basic_piecewise_curve<Real>& curve, Real x) {
    return curve.locate_segment(x);
}

using piecewise_curve = basic_piecewise_curve<double>;

}  // namespace loccurve
