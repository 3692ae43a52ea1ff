#include <gtest/gtest.h>

#include <fracpath/occupation.hpp>
#include <fracpath/pathgen.hpp>

using namespace fracpath;

namespace {

SampledPath family(const std::string& name, std::size_t N) {
    GeneratorConfig g;
    g.family = name;
    g.N = N;
    return generate_path(g, 0);
}

}  // namespace

TEST(Occupation, MassEqualsWindowLength) {
    GeneratorConfig g;
    g.family = "fbm";
    g.T = 2.0;
    g.N = 2048;
    const auto X = generate_path(g, 1);
    EXPECT_NEAR(occupation_measure(X).mass(), 2.0, 1e-12);
    EXPECT_NEAR(occupation_measure(X, {0.5, 1.25}).mass(), 0.75, 1e-12);
}

TEST(Occupation, ConstantPathIsPointMass) {
    GeneratorConfig g;
    g.family = "constant";
    g.value = {0.3};
    g.N = 64;
    const auto m = occupation_measure(generate_path(g, 0));
    EXPECT_TRUE(m.point_masses);
    const double x = 0.3;
    EXPECT_NEAR(ball_mass(m, {&x, 1}, 1e-9), 1.0, 1e-12);
}

TEST(Occupation, BallCounterMatchesBruteForce) {
    GeneratorConfig g;
    g.family = "fbm";
    g.dim = 2;
    g.N = 2048;
    const auto m = occupation_measure(generate_path(g, 3));
    const BallCounter bc(m);
    for (std::size_t i = 0; i < m.size(); i += 97)
        for (double r : {0.01, 0.05, 0.3}) EXPECT_NEAR(bc.mass(m.point(i), r), ball_mass(m, m.point(i), r), 1e-12);
}

TEST(LocalTime, TentHistogramIsOne) {
    const auto lt = local_time_histogram(occupation_measure(family("tent", 1 << 16)), std::ldexp(1.0, -8));
    for (std::size_t i = 0; i < lt.size(); ++i)
        if (lt.centers[i] > 0.05 && lt.centers[i] < 0.95) EXPECT_NEAR(lt.density[i], 1.0, 0.05);
}

TEST(LocalTime, ExactPiecewiseLinear) {
    EXPECT_NEAR(exact_local_time_pl(family("linear", 1000), 0.3), 1.0, 1e-12);
    EXPECT_NEAR(exact_local_time_pl(family("tent", 1000), 0.3), 1.0, 1e-12);
    EXPECT_EQ(exact_local_time_pl(family("linear", 1000), 2.0), 0.0);
}

TEST(LocalTime, HistogramIntegratesToMass) {
    GeneratorConfig g;
    g.family = "fbm";
    g.N = 4096;
    const auto m = occupation_measure(generate_path(g, 5));
    const auto lt = local_time_histogram(m, 0.01);
    double s = 0.0;
    for (double d : lt.density) s += d * 0.01;
    EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(Regularity, LinearPathHasExponentOne) {
    EXPECT_NEAR(default_regularity_exponent(occupation_measure(family("linear", 1 << 14))), 1.0, 0.02);
}

TEST(Regularity, RoughFbmSaturatesAtDimension) {
    GeneratorConfig g;
    g.family = "fbm";
    g.hurst = 0.3;
    g.N = 1 << 15;
    EXPECT_NEAR(default_regularity_exponent(occupation_measure(generate_path(g, 1))), 1.0, 0.15);
}

TEST(Regularity, RejectsDegenerateInput) {
    const auto m = make_measure(1, {0.0, 0.0}, {1.0, 1.0}, 0.1);
    EXPECT_THROW(default_regularity_exponent(m), Error);
    EXPECT_THROW(log_grid(0.0, 1.0, 4), Error);
}
