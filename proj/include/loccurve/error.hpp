#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace loccurve {

enum class error_code {
    invalid_grid,
    invalid_placement,
    knot_out_of_interval,
    degenerate_segment,
    out_of_domain,
    degenerate_placement,
    unstable_c1,
    index_out_of_range,
    non_positive_error,
    parse_error,
    not_strictly_increasing,
    length_mismatch,
    unknown_function,
    invalid_request,
};

constexpr std::string_view to_string(error_code code) noexcept {
    switch (code) {
    case error_code::invalid_grid: return "InvalidGrid";
    case error_code::invalid_placement: return "InvalidPlacement";
    case error_code::knot_out_of_interval: return "KnotOutOfInterval";
    case error_code::degenerate_segment: return "DegenerateSegment";
    case error_code::out_of_domain: return "OutOfDomain";
    case error_code::degenerate_placement: return "DegeneratePlacement";
    case error_code::unstable_c1: return "UnstableC1";
    case error_code::index_out_of_range: return "IndexOutOfRange";
    case error_code::non_positive_error: return "NonPositiveError";
    case error_code::parse_error: return "ParseError";
    case error_code::not_strictly_increasing: return "NotStrictlyIncreasing";
    case error_code::length_mismatch: return "LengthMismatch";
    case error_code::unknown_function: return "UnknownFunction";
    case error_code::invalid_request: return "InvalidRequest";
    }
    return "Unknown";
}

/// Every validation failure in the library is reported through this type.
///
/// `index()` follows the 1-based numbering of the knots: τ₁…τ_N for data
/// points, x₂…x_N for secondary knots, β₂…β_{N−1} for placement entries.
class error : public std::runtime_error {
public:
    error(error_code code, const std::string& detail, std::optional<std::size_t> index = std::nullopt)
        : std::runtime_error(compose(code, detail, index)), code_(code), detail_(detail), index_(index) {}

    error_code code() const noexcept { return code_; }
    std::string_view name() const noexcept { return to_string(code_); }
    const std::string& detail() const noexcept { return detail_; }
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    static std::string compose(error_code code, const std::string& detail, std::optional<std::size_t> index) {
        std::string out(to_string(code));
        if (index) out += " (index " + std::to_string(*index) + ")";
        if (!detail.empty()) out += ": " + detail;
        return out;
    }

    error_code code_;
    std::string detail_;
    std::optional<std::size_t> index_;
};

}  // namespace loccurve
