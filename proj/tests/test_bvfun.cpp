#include <gtest/gtest.h>

#include <fracpath/bvfun.hpp>

using namespace fracpath;

TEST(Representative, JumpSetGetsSymmetricMean) {
    const auto f = indicator_interval(0.0, 1.0);
    const double on = 1.0, in = 0.5, out = 2.0;
    EXPECT_EQ(evaluate_representative(f, {&on, 1}).value, 0.5);
    EXPECT_TRUE(evaluate_representative(f, {&on, 1}).on_singular_set);
    EXPECT_EQ(evaluate_representative(f, {&in, 1}).value, 1.0);
    EXPECT_EQ(evaluate_representative(f, {&out, 1}).value, 0.0);

    const auto st = staircase({0.0, 1.0}, {2.0, -1.0}, 0.5);
    const double z = 0.0, h = 0.5;
    EXPECT_EQ(evaluate_representative(st, {&z, 1}).value, 1.5);
    EXPECT_EQ(evaluate_representative(st, {&h, 1}).value, 2.5);
}

TEST(Representative, BoxCornerDensity) {
    const auto f = indicator_box({0.0, 0.0}, {1.0, 1.0});
    const std::vector<double> corner{0.0, 0.0}, edge{0.5, 1.0}, outside{2.0, 1.0};
    EXPECT_EQ(evaluate_representative(f, corner).value, 0.25);
    EXPECT_EQ(evaluate_representative(f, edge).value, 0.5);
    EXPECT_EQ(evaluate_representative(f, outside).value, 0.0);
    EXPECT_FALSE(evaluate_representative(f, outside).on_singular_set);
}

TEST(Representative, ScaleIsLinear) {
    const auto f = scaled(smooth_bump({0.0}, 2.0), -3.0);
    const double x = 1.0;
    EXPECT_DOUBLE_EQ(evaluate_representative(f, {&x, 1}).value, -3.0 * 0.5625);
}

TEST(Gradient, TotalVariationOfIndicators) {
    EXPECT_DOUBLE_EQ(total_variation(gradient_measure(indicator_interval(-1.0, 2.0), 1e-3)), 2.0);
    EXPECT_DOUBLE_EQ(total_variation(gradient_measure(staircase({0.0, 1.0}, {2.0, -1.0}), 1e-3)), 3.0);
    EXPECT_NEAR(total_variation(gradient_measure(indicator_box({0.0, 0.0}, {1.0, 2.0}), 0.01)), 6.0, 1e-9);
    EXPECT_NEAR(total_variation(gradient_measure(indicator_box({0, 0, 0}, {1, 1, 1}), 0.05)), 6.0, 1e-9);
    EXPECT_NEAR(total_variation(gradient_measure(indicator_ball({0.0, 0.0}, 0.5), 0.01)), pi, 1e-9);
    EXPECT_NEAR(total_variation(gradient_measure(indicator_ball({0.0, 0.0, 0.0}, 0.5), 0.02)), pi, 1e-9);
}

TEST(Gradient, SmoothBumpVariation) {
    EXPECT_NEAR(total_variation(gradient_measure(smooth_bump({0.0}, 1.0, 2.0), 1e-4)), 4.0, 1e-3);
    // n = 2: integral of |grad A(1 - r^2)^2| = 2 pi A int_0^1 4 r^2 (1 - r^2) dr = 16 pi A / 15
    EXPECT_NEAR(total_variation(gradient_measure(smooth_bump({0.0, 0.0}, 1.0), 2e-3)), 16.0 * pi / 15.0, 5e-3);
}

TEST(Gradient, RejectsBadArguments) {
    EXPECT_THROW(indicator_interval(1.0, 0.0), Error);
    EXPECT_THROW(gradient_measure(indicator_interval(0.0, 1.0), 0.0), Error);
    EXPECT_THROW(riesz_kernel_function(2, 0.5), Error);
}

TEST(GradientPotential, IntervalMatchesReference) {
    const double x = 2.0;
    EXPECT_NEAR(gradient_potential(indicator_interval(0.0, 1.0), 0.5, {&x, 1}, 1e-3), 0.681037072175310750, 1e-13);
    const double a = 0.0;
    EXPECT_TRUE(std::isinf(gradient_potential(indicator_interval(0.0, 1.0), 0.5, {&a, 1}, 1e-3)));
}

TEST(MaximalFunction, PointwiseBoundHolds) {
    // |phi(x) - phi(y)| <= C |x - y|^s (M + M) with M the (1 - s) maximal function of |D phi|.
    const auto f = indicator_interval(0.0, 1.0);
    const auto m = gradient_measure(f, 1e-3);
    const double s = 0.5;
    double worst = 0.0;
    for (double x : {-0.3, 0.2, 0.7, 1.4})
        for (double y : {-0.1, 0.5, 0.9, 1.1}) {
            const double d = std::abs(evaluate_representative(f, {&x, 1}).value - evaluate_representative(f, {&y, 1}).value);
            const double b = std::pow(std::abs(x - y), s) * (maximal_function(m, 1.0 - s, {&x, 1}) + maximal_function(m, 1.0 - s, {&y, 1}));
            worst = std::max(worst, d / b);
        }
    EXPECT_LT(worst, 2.0);
}
