#include <gtest/gtest.h>

#include <fracpath/pathgen.hpp>

using namespace fracpath;

namespace {

GeneratorConfig fbm(double H, std::size_t N) {
    GeneratorConfig g;
    g.family = "fbm";
    g.hurst = H;
    g.N = N;
    return g;
}

double terminal_second_moment(const GeneratorConfig& g, int seeds) {
    double s = 0.0;
    for (int k = 1; k <= seeds; ++k) {
        const auto X = generate_path(g, static_cast<std::uint64_t>(k));
        s += X.x.back() * X.x.back();
    }
    return s / seeds;
}

}  // namespace

TEST(Deterministic, LinearTentConstantStep) {
    GeneratorConfig g;
    g.family = "linear";
    g.N = 8;
    g.slope = 2.0;
    auto X = generate_path(g, 0);
    EXPECT_DOUBLE_EQ(X.x[4], 1.0);
    EXPECT_DOUBLE_EQ(X.x.back(), 2.0);

    g.family = "tent";
    X = generate_path(g, 0);
    EXPECT_DOUBLE_EQ(X.x[4], 0.0);
    EXPECT_DOUBLE_EQ(X.x[2], 0.5);
    EXPECT_DOUBLE_EQ(X.x.back(), 1.0);

    g.family = "constant";
    g.value = {0.5, -1.0};
    X = generate_path(g, 0);
    EXPECT_EQ(X.dim, 2);
    EXPECT_DOUBLE_EQ(X.at(3, 1), -1.0);

    g = {};
    g.family = "step";
    g.N = 4;
    g.breakpoints = {0.5};
    g.heights = {3.0};
    X = generate_path(g, 0);
    EXPECT_EQ(X.interp, Interpolation::cadlag);
    EXPECT_DOUBLE_EQ(X.x[1], 0.0);
    EXPECT_DOUBLE_EQ(X.x[2], 3.0);
}

TEST(Fbm, SameSeedSamePath) {
    const auto a = generate_path(fbm(0.3, 512), 9), b = generate_path(fbm(0.3, 512), 9), c = generate_path(fbm(0.3, 512), 10);
    EXPECT_EQ(a.x, b.x);
    EXPECT_NE(a.x, c.x);
    EXPECT_EQ(a.x.front(), 0.0);
}

TEST(Fbm, TerminalVarianceIsTToTwoH) {
    for (double H : {0.3, 0.5, 0.8}) EXPECT_NEAR(terminal_second_moment(fbm(H, 256), 400), 1.0, 0.22) << H;
    auto g = fbm(0.7, 256);
    g.T = 4.0;
    EXPECT_NEAR(terminal_second_moment(g, 400) / std::pow(4.0, 1.4), 1.0, 0.22);
}

TEST(Fbm, IncrementCorrelationSign) {
    for (double H : {0.25, 0.75}) {
        double s = 0.0;
        for (int k = 1; k <= 50; ++k) {
            const auto X = generate_path(fbm(H, 1024), static_cast<std::uint64_t>(k));
            for (std::size_t i = 0; i + 2 < X.size(); ++i) s += (X.x[i + 1] - X.x[i]) * (X.x[i + 2] - X.x[i + 1]);
        }
        const double rho = s / 50.0 / 1024.0 / std::pow(1024.0, -2.0 * H);
        EXPECT_NEAR(rho, std::pow(2.0, 2.0 * H - 1.0) - 1.0, 0.05) << H;
    }
}

TEST(Fbm, HolderExponentNearHurst) {
    for (double H : {0.3, 0.5, 0.7}) {
        const auto X = generate_path(fbm(H, 1 << 14), 4);
        EXPECT_NEAR(empirical_holder_exponent(X), H, 0.08) << H;
    }
}

TEST(Stable, GaussianCaseHasUnitVariance) {
    GeneratorConfig g;
    g.family = "stable_levy";
    g.stable_alpha = 2.0;
    g.N = 64;
    EXPECT_NEAR(terminal_second_moment(g, 1000), 1.0, 0.15);
    EXPECT_EQ(generate_path(g, 1).interp, Interpolation::cadlag);
}

TEST(Stable, HeavyTailsForSmallAlpha) {
    GeneratorConfig g;
    g.family = "stable_levy";
    g.stable_alpha = 0.8;
    g.N = 4096;
    const auto X = generate_path(g, 2);
    double big = 0.0;
    for (std::size_t i = 0; i + 1 < X.size(); ++i) big = std::max(big, std::abs(X.x[i + 1] - X.x[i]));
    const double range = path_diameter(X);
    EXPECT_GT(big / range, 0.1);
}

TEST(Generator, RejectsBadParameters) {
    EXPECT_THROW(generate_path(fbm(1.2, 64), 1), Error);
    GeneratorConfig g;
    g.family = "nonsense";
    EXPECT_THROW(generate_path(g, 1), Error);
}
