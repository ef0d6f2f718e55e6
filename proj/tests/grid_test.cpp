#include <gtest/gtest.h>

#include <vector>

#include "loccurve/grid.hpp"
#include "oracles.hpp"

using namespace loccurve;

namespace {

primary_grid table3_grid() {
    return primary_grid({7.99, 8.09, 8.19, 8.7, 9.2, 10.0, 12.0, 15.0, 20.0},
                        {0.0, 0.0000276429, 0.0437498, 0.169183, 0.469428, 0.94374, 0.998636, 0.999919, 0.999994});
}

template <typename Fn>
error_code code_of(Fn&& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return error_code::invalid_request;
}

}  // namespace

TEST(PrimaryGrid, RejectsShortOrUnsortedInput) {
    EXPECT_EQ(code_of([] { primary_grid({0, 1}, {0, 1}); }), error_code::invalid_grid);
    EXPECT_EQ(code_of([] { primary_grid({0, 1, 1}, {0, 1, 2}); }), error_code::invalid_grid);
    EXPECT_EQ(code_of([] { primary_grid({0, 2, 1}, {0, 1, 2}); }), error_code::invalid_grid);
    EXPECT_EQ(code_of([] { primary_grid({0, 1, 2}, {0, 1}); }), error_code::length_mismatch);
}

TEST(PrimaryGrid, StepIsTheLeftInterval) {
    const primary_grid g({0, 1, 3}, {0, 0, 0});
    EXPECT_DOUBLE_EQ(g.step(1), 1);
    EXPECT_DOUBLE_EQ(g.step(2), 2);
}

TEST(KnotPlacement, EnforcesAdmissibleIntervals) {
    EXPECT_NO_THROW(knot_placement(1.0, {0.5, 1.0}));
    EXPECT_EQ(code_of([] { knot_placement(0.0, {0.5}); }), error_code::invalid_placement);
    EXPECT_EQ(code_of([] { knot_placement(1.5, {0.5}); }), error_code::invalid_placement);
    EXPECT_EQ(code_of([] { knot_placement(0.5, {1.0, 0.5}); }), error_code::invalid_placement);
    EXPECT_EQ(code_of([] { knot_placement(0.5, {0.5, 0.0}); }), error_code::invalid_placement);

    try {
        knot_placement(0.5, {0.5, 1.0, 0.5});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.index(), 3u);  // β₃
    }
}

TEST(KnotPlacement, DerivedAlphaCouplesNeighbours) {
    const knot_placement p(0.25, {0.3, 0.8, 1.0});
    EXPECT_DOUBLE_EQ(p.alpha(0), 0.25);
    EXPECT_DOUBLE_EQ(p.alpha(1), 0.7);
    EXPECT_DOUBLE_EQ(p.alpha(2), 1 - 0.8);
}

TEST(SecondaryGrid, DirectSubstitution) {
    const primary_grid g({0, 1, 2, 3}, {0, 0, 0, 0});
    const auto s = build_secondary_grid(g, knot_placement(1.0, {0.5, 1.0}));
    EXPECT_EQ(s.x, (std::vector<double>{0, 1.5, 3}));
}

TEST(SecondaryGrid, MidpointCase) {
    const primary_grid g({0, 1, 2}, {0, 0, 0});
    const auto s = build_secondary_grid(g, knot_placement(0.5, {0.5}));
    EXPECT_EQ(s.x, (std::vector<double>{0.5, 1.5}));
    EXPECT_DOUBLE_EQ(s.h_lo[0], 0.5);
    EXPECT_DOUBLE_EQ(s.h_hi[0], 0.5);
}

TEST(SecondaryGrid, PlacementCountMustMatch) {
    const primary_grid g({0, 1, 2, 3}, {0, 0, 0, 0});
    EXPECT_EQ(code_of([&] { build_secondary_grid(g, knot_placement(0.5, {0.5})); }), error_code::invalid_placement);
}

TEST(SecondaryGrid, TableFourExperimentOne) {
    const auto grid = table3_grid();
    const std::vector<double> x{7.99, 8.14, 8.445, 8.95, 9.6, 11.0, 13.5, 20.0};
    const auto placement = placement_from_knots<double>(grid, x);
    const auto s = build_secondary_grid(grid, placement);
    ASSERT_EQ(s.x.size(), x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        EXPECT_NEAR(s.x[k], x[k], 1e-12 * std::abs(x[k])) << k;
    }
    EXPECT_EQ(s.x.front(), 7.99);
    EXPECT_EQ(s.x.back(), 20.0);
}

TEST(PlacementFromKnots, InverseOfSubstitution) {
    const primary_grid g({0, 1, 2, 3}, {0, 0, 0, 0});
    const std::vector<double> x{0, 1.5, 3};
    const auto p = placement_from_knots<double>(g, x);
    EXPECT_DOUBLE_EQ(p.alpha2(), 1.0);
    EXPECT_DOUBLE_EQ(p.beta(0), 0.5);
    EXPECT_DOUBLE_EQ(p.beta(1), 1.0);
}

TEST(PlacementFromKnots, TableFourExperimentTwo) {
    const std::vector<double> x{7.99, 8.14, 8.445, 8.95, 9.6, 10.1, 12.1, 20.0};
    const auto p = placement_from_knots<double>(table3_grid(), x);
    EXPECT_NEAR(p.beta(4), 0.05, 1e-12);  // β₆ = (10.1 − 10.0) / 2.0
}

TEST(PlacementFromKnots, InteriorKnotOnPrimaryKnotIsRejected) {
    const primary_grid g({0, 1, 2, 3}, {0, 0, 0, 0});
    const std::vector<double> x{0, 1.0, 3};  // x₃ = τ₂
    try {
        placement_from_knots<double>(g, x);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), error_code::knot_out_of_interval);
        EXPECT_EQ(e.index(), 3u);
    }
    const std::vector<double> too_few{0, 3};
    EXPECT_EQ(code_of([&] { placement_from_knots<double>(g, too_few); }), error_code::length_mismatch);
}

TEST(SecondaryGridProperty, RandomInvariants) {
    oracle::case_generator gen(11);
    for (int trial = 0; trial < 500; ++trial) {
        const auto c = gen.grid();
        const primary_grid grid(c.tau, c.F);
        const knot_placement placement(c.alpha2, c.beta);
        const auto s = build_secondary_grid(grid, placement);
        const std::size_t n = c.tau.size();
        ASSERT_EQ(s.x.size(), n - 1);
        EXPECT_GE(s.x.front(), c.tau[0]);
        EXPECT_LT(s.x.front(), c.tau[1]);
        EXPECT_GT(s.x.back(), c.tau[n - 2]);
        EXPECT_LE(s.x.back(), c.tau[n - 1]);
        for (std::size_t k = 0; k + 1 < s.x.size(); ++k) {
            EXPECT_LT(s.x[k], s.x[k + 1]);
            const double scale = std::max({std::abs(s.x[k]), std::abs(s.x[k + 1]), 1.0});
            EXPECT_NEAR(s.x[k + 1] - s.x[k], s.h_lo[k] + s.h_hi[k], 1e-13 * scale);
            EXPECT_LE(s.x[k], c.tau[k + 1]);
            EXPECT_GE(s.x[k + 1], c.tau[k + 1]);
        }

        // Round trip through explicit knots.
        const auto back = placement_from_knots<double>(grid, s.x);
        const auto again = build_secondary_grid(grid, back);
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            EXPECT_LE(oracle::rel_err(again.x[k], s.x[k]), 1e-12);
        }
    }
}
