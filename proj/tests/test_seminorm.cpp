#include <gtest/gtest.h>

#include <fracpath/pathgen.hpp>
#include <fracpath/seminorm.hpp>

using namespace fracpath;

namespace {

SampledPath linear(std::size_t N) {
    GeneratorConfig g;
    g.family = "linear";
    g.N = N;
    return generate_path(g, 0);
}

SampledPath fbm(double H, std::size_t N, std::uint64_t seed) {
    GeneratorConfig g;
    g.family = "fbm";
    g.hurst = H;
    g.N = N;
    return generate_path(g, seed);
}

}  // namespace

TEST(Gagliardo, LinearPathHalfOrder) {
    const auto r = gagliardo_seminorm(linear(1024), {0.5, 2.0, 0.0});
    EXPECT_NEAR(r.raw, 1.0, 1e-3);
    EXPECT_EQ(r.verdict, Verdict::finite);
}

TEST(Gagliardo, HolderSeminormOfLinearPath) {
    EXPECT_NEAR(gagliardo_seminorm(linear(256), {0.6, inf, 0.0}).raw, 1.0, 1e-12);
}

TEST(Gagliardo, StepDivergesAboveCriticalOrder) {
    GeneratorConfig g;
    g.family = "step";
    g.N = 4096;
    g.breakpoints = {0.5};
    g.heights = {1.0};
    const auto X = generate_path(g, 0);
    EXPECT_TRUE(gagliardo_seminorm(X, {0.6, 2.0, 0.0}).diverged());
    EXPECT_FALSE(gagliardo_seminorm(X, {0.3, 2.0, 0.0}).diverged());
}

TEST(Gagliardo, SampledRouteAgreesWithFullSum) {
    const auto X = fbm(0.6, 1 << 13, 5);
    const double sampled = gagliardo_seminorm(X, {0.4, 2.0, 0.0}, 1).raw;
    const double full = std::pow(X.dt * X.dt * detail::gagliardo_sum_full(X, 0.4, 2.0, 1), 0.5);
    EXPECT_NEAR(sampled / full, 1.0, 0.02);
}

TEST(Gagliardo, Triangle) {
    const auto f = fbm(0.5, 512, 1), g = fbm(0.7, 512, 2);
    auto h = f;
    for (std::size_t i = 0; i < h.x.size(); ++i) h.x[i] += g.x[i];
    const SeminormParams q{0.4, 3.0, 0.0};
    EXPECT_LE(gagliardo_seminorm(h, q).raw, gagliardo_seminorm(f, q).raw + gagliardo_seminorm(g, q).raw + 1e-12);
}

TEST(Gagliardo, HomogeneousOfDegreeOne) {
    const auto f = fbm(0.5, 512, 1);
    auto g = f;
    for (double& v : g.x) v *= -4.0;
    const SeminormParams q{0.3, 2.0, 0.0};
    EXPECT_NEAR(gagliardo_seminorm(g, q).raw, 4.0 * gagliardo_seminorm(f, q).raw, 1e-12);
}

TEST(Sobolev, LinearPathNorm) {
    EXPECT_NEAR(sobolev_norm(linear(1024), {0.5, 2.0, 0.0}).raw, std::sqrt(1.0 / 3.0) + 1.0, 2e-3);
}

TEST(Embedding, PointwiseProfilesOrdered) {
    const auto X = fbm(0.6, 512, 3);
    const auto e = embedding_check(X, 0.5, 4.0, 0.3, 2.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < e.lhs.size(); ++i) worst = std::max(worst, e.lhs[i] / e.rhs[i]);
    EXPECT_LT(worst, 10.0);
    EXPECT_THROW(embedding_check(X, 0.3, 4.0, 0.5, 2.0), Error);
}

TEST(KeyEstimate, HypothesesChecked) {
    const auto X = fbm(0.7, 256, 1);
    const auto phi = indicator_interval(-0.2, 0.3);
    EXPECT_THROW(key_estimate_report(phi, X, 0.6, 0.65, 1.0, inf, 0.35, 2.0, 1e-3), Error);
    EXPECT_THROW(key_estimate_report(phi, X, 0.6, 0.5, 2.0, inf, 0.35, 2.0, 1e-3), Error);
}

TEST(KeyEstimate, RatioFiniteAndHomogeneous) {
    const auto X = fbm(0.7, 1024, 1);
    const auto phi = indicator_interval(-0.2, 0.3);
    const auto a = key_estimate_report(phi, X, 0.6, 0.65, 2.0, inf, 0.35, 2.0, 1e-3, 1);
    const auto b = key_estimate_report(scaled(phi, 7.0), X, 0.6, 0.65, 2.0, inf, 0.35, 2.0, 1e-3, 1);
    EXPECT_TRUE(std::isfinite(a.ratio));
    EXPECT_GT(a.ratio, 0.0);
    EXPECT_NEAR(b.ratio / a.ratio, 1.0, 1e-10);
}
