#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "loccurve/convergence.hpp"

using namespace loccurve;

TEST(Eoc, PrintedExamples) {
    EXPECT_NEAR(eoc(3.0793e-4, 7.6937e-5), 2.0009, 1e-4);
    EXPECT_NEAR(eoc(2.4567e-1, 1.1934e-1), 1.0416, 1e-4);
    EXPECT_EQ(eoc(0.125, 0.125), 0.0);
    EXPECT_DOUBLE_EQ(eoc(1.0, 0.25), 2.0);
}

TEST(Eoc, RejectsNonPositive) {
    try {
        eoc(0.0, 1.0);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), error_code::non_positive_error);
    }
    EXPECT_THROW(eoc(1.0, -1.0), error);
    EXPECT_THROW(eoc(std::nan(""), 1.0), error);
}

TEST(TestFunctions, RegistryAndLookup) {
    EXPECT_EQ(find_test_function("quartic-sine").name, "quartic-sine");
    EXPECT_NO_THROW(find_test_function("quadratic"));
    try {
        find_test_function("no-such");
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), error_code::unknown_function);
    }
}

TEST(TestFunctions, InconsistentDerivativesAreRejected) {
    EXPECT_THROW(make_test_function(
                     "bad", [](double x) { return x * x; }, [](double x) { return 3 * x; }, [](double) { return 2.0; }),
                 error);
    EXPECT_THROW(make_test_function(
                     "bad2", [](double x) { return x * x; }, [](double x) { return 2 * x; }, [](double) { return 3.0; }),
                 error);
}

TEST(RunExperiment, UniformFirstRow) {
    const auto rows = run_experiment(find_test_function("quartic-sine"), grid_mode::uniform);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0].j, 5);
    EXPECT_EQ(rows[0].step, 3.125e-2);
    EXPECT_NEAR(rows[0].err1, 3.0793e-4, 5e-4 * 3.0793e-4);
    EXPECT_NEAR(rows[0].err2, 1.8102e-3, 5e-4 * 1.8102e-3);
    EXPECT_NEAR(rows[0].err3, 1.9921e-3, 5e-4 * 1.9921e-3);
    EXPECT_FALSE(rows[0].eoc1.has_value());
    // Uniform grid: corrected estimates coincide with raw S′ and S″.
    for (const auto& r : rows) {
        EXPECT_NEAR(r.err2, r.raw_err2, 1e-9);
        EXPECT_NEAR(r.err3, r.raw_err3, 1e-7);
    }
}

TEST(RunExperiment, RatioThreeFirstRow) {
    const auto rows = run_experiment(find_test_function("quartic-sine"), grid_mode::ratio, 3.0);
    EXPECT_NEAR(rows[0].err1, 7.5977e-4, 5e-4 * 7.5977e-4);
    EXPECT_NEAR(rows[0].err2, 5.6177e-3, 5e-4 * 5.6177e-3);
    EXPECT_NEAR(rows[0].err3, 2.4567e-1, 5e-4 * 2.4567e-1);
    EXPECT_DOUBLE_EQ(rows[0].h_bar, 1.5 * 3.125e-2);
}

TEST(RunExperiment, RowsHalveAndStayPositive) {
    for (const auto mode : {grid_mode::uniform, grid_mode::ratio}) {
        const auto rows = run_experiment(find_test_function("quartic-sine"), mode, mode == grid_mode::ratio ? 3.0 : 1.0, 3, 10);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            EXPECT_GT(rows[k].err1, 0);
            EXPECT_GT(rows[k].err2, 0);
            EXPECT_GT(rows[k].err3, 0);
            if (k > 0) {
                EXPECT_EQ(rows[k].step * 2, rows[k - 1].step);
                EXPECT_TRUE(rows[k].eoc1 && rows[k].eoc2 && rows[k].eoc3);
            }
        }
    }
}

TEST(RunExperiment, QuadraticIsExactAtEveryLevel) {
    for (const auto mode : {grid_mode::uniform, grid_mode::ratio}) {
        const auto rows = run_experiment(find_test_function("quadratic"), mode, mode == grid_mode::ratio ? 3.0 : 1.0);
        for (const auto& r : rows) {
            EXPECT_LE(r.err2, 1e-10) << r.j;
            EXPECT_LE(r.err3, 1e-10) << r.j;
        }
    }
}

TEST(RunExperiment, ConfigurationErrors) {
    const auto& fn = find_test_function("quartic-sine");
    EXPECT_THROW(run_experiment(fn, grid_mode::uniform, 3.0), error);
    EXPECT_THROW(run_experiment(fn, grid_mode::ratio, 0.0), error);
    EXPECT_THROW(run_experiment(fn, grid_mode::ratio, -2.0), error);
    EXPECT_THROW(run_experiment(fn, grid_mode::uniform, 1.0, 9, 5), error);
}

TEST(FormatTable, FiveSignificantDigits) {
    const auto text = format_table(run_experiment(find_test_function("quartic-sine"), grid_mode::uniform));
    EXPECT_NE(text.find("3.125e-02"), std::string::npos);
    EXPECT_NE(text.find("3.0793e-04"), std::string::npos);
    EXPECT_NE(text.find("2.0009"), std::string::npos);
    EXPECT_NE(text.find(" - "), std::string::npos);
}
