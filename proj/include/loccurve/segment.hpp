#pragma once

#include <concepts>
#include <cstddef>
#include <string>

#include "loccurve/error.hpp"
#include "loccurve/grid.hpp"

namespace loccurve {

/// Value and slope prescribed at both ends of one segment.
template <std::floating_point Real>
struct basic_chord_data {
    Real f_lo;
    Real f_hi;
    Real d_lo;
    Real d_hi;
};

namespace detail {

template <std::floating_point Real>
void check_segment_index(const basic_primary_grid<Real>& grid, std::size_t k) {
    if (k + 2 >= grid.size()) {
        throw error(error_code::index_out_of_range,
                    "segment " + std::to_string(k) + " does not exist for " + std::to_string(grid.size()) + " knots");
    }
}

template <std::floating_point Real>
Real knot_value(const basic_primary_grid<Real>& grid, const basic_knot_placement<Real>& placement, std::size_t j) {
    const Real w = knot_weight(placement, j);
    return j == 0 ? blend(w, grid.value(0), grid.value(1)) : blend(w, grid.value(j + 1), grid.value(j));
}

/// Divided difference over [τ_j, τ_{j+1}], the slope prescribed at secondary knot j.
template <std::floating_point Real>
Real knot_slope(const basic_primary_grid<Real>& grid, std::size_t j) {
    return (grid.value(j + 1) - grid.value(j)) / grid.step(j + 1);
}

}  // namespace detail

/// Chord values and slopes for segment k (0-based; k = i − 2 in 1-based terms).
template <std::floating_point Real>
basic_chord_data<Real> chord_data(const basic_primary_grid<Real>& grid, const basic_knot_placement<Real>& placement,
                                  std::size_t k) {
    check_compatible(grid, placement);
    detail::check_segment_index(grid, k);
    return {detail::knot_value(grid, placement, k), detail::knot_value(grid, placement, k + 1),
            detail::knot_slope(grid, k), detail::knot_slope(grid, k + 1)};
}

/// One piece s(x) = f_hi·t + f_lo·(1 − t) + (x − x_lo)(x − x_hi)(A·x + B).
///
/// The cubic factor is evaluated as A·u + b_local with u = x − mid, which is
/// the same polynomial without the cancellation of A·x + B for large |x|.
/// a() and b() report the coefficients in the global-x convention.
template <std::floating_point Real>
class basic_segment {
public:
    static basic_segment from_endpoint_data(Real x_lo, Real x_hi, Real f_lo, Real f_hi, Real d_lo, Real d_hi) {
        const Real len = x_hi - x_lo;
        if (detail::is_degenerate_length(len, x_lo, x_hi)) {
            throw error(error_code::degenerate_segment,
                        "segment [" + std::to_string(x_lo) + ", " + std::to_string(x_hi) + "] has no length");
        }
        basic_segment s;
        s.x_lo_ = x_lo;
        s.x_hi_ = x_hi;
        s.f_lo_ = f_lo;
        s.f_hi_ = f_hi;
        s.d_lo_ = d_lo;
        s.d_hi_ = d_hi;
        s.len_ = len;
        s.mid_ = x_lo + len / 2;

        const Real rise = f_hi - f_lo;
        const Real len2 = len * len;
        const Real len3 = len2 * len;
        const Real sum = x_lo + x_hi;
        s.a_ = (d_lo + d_hi) / len2 - 2 * rise / len3;
        s.b_local_ = (d_hi - d_lo) / (2 * len);
        s.b_ = (d_hi - d_lo) / (2 * len) - (d_hi + d_lo) * sum / (2 * len2) + rise * sum / len3;
        return s;
    }

    Real x_lo() const noexcept { return x_lo_; }
    Real x_hi() const noexcept { return x_hi_; }
    Real f_lo() const noexcept { return f_lo_; }
    Real f_hi() const noexcept { return f_hi_; }
    Real d_lo() const noexcept { return d_lo_; }
    Real d_hi() const noexcept { return d_hi_; }
    Real a() const noexcept { return a_; }
    Real b() const noexcept { return b_; }
    Real b_local() const noexcept { return b_local_; }
    Real length() const noexcept { return len_; }
    Real midpoint() const noexcept { return mid_; }

    /// Polynomial or one of its first two derivatives at x. No domain check.
    Real eval(Real x, int order = 0) const {
        const Real from_lo = x - x_lo_;
        const Real from_hi = x - x_hi_;
        const Real cubic = a_ * (x - mid_) + b_local_;
        switch (order) {
        case 0: return f_hi_ * (from_lo / len_) + f_lo_ * (-from_hi / len_) + from_lo * from_hi * cubic;
        case 1: return (f_hi_ - f_lo_) / len_ + (from_lo + from_hi) * cubic + from_lo * from_hi * a_;
        case 2: return 2 * cubic + 2 * (from_lo + from_hi) * a_;
        default: throw error(error_code::invalid_request, "derivative order must be 0, 1 or 2");
        }
    }

private:
    basic_segment() = default;

    Real x_lo_{}, x_hi_{};
    Real f_lo_{}, f_hi_{};
    Real d_lo_{}, d_hi_{};
    Real a_{}, b_{}, b_local_{};
    Real len_{}, mid_{};
};

template <std::floating_point Real>
basic_segment<Real> build_segment(const basic_primary_grid<Real>& grid, const basic_knot_placement<Real>& placement,
                                  std::size_t k) {
    const auto chord = chord_data(grid, placement, k);
    return basic_segment<Real>::from_endpoint_data(detail::knot_abscissa(grid, placement, k),
                                                   detail::knot_abscissa(grid, placement, k + 1), chord.f_lo,
                                                   chord.f_hi, chord.d_lo, chord.d_hi);
}

using chord = basic_chord_data<double>;
using segment = basic_segment<double>;

}  // namespace loccurve
