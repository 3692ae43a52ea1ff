#include <gtest/gtest.h>

#include <fracpath/fracint.hpp>
#include <fracpath/pathgen.hpp>

using namespace fracpath;

namespace {

SampledPath sampled(std::size_t N, double (*f)(double)) {
    std::vector<double> v(N + 1);
    for (std::size_t i = 0; i <= N; ++i) v[i] = f(static_cast<double>(i) / static_cast<double>(N));
    return make_path(1, 1.0, Interpolation::piecewise_linear, v);
}

SampledPath fbm(double H, std::size_t N, std::uint64_t seed) {
    GeneratorConfig g;
    g.family = "fbm";
    g.hurst = H;
    g.N = N;
    return generate_path(g, seed);
}

double square(double t) { return t * t; }
double sine(double t) { return std::sin(t); }
double ident(double t) { return t; }
double one(double) { return 1.0; }

// 2 cos 1 - sin 1
constexpr double zahle_t2_sint = 0.239133626928382928;

}  // namespace

TEST(Marchaud, LinearFunctionIsExact) {
    const auto f = sampled(1024, ident);
    EXPECT_NEAR(weyl_marchaud(f, {0.5, Side::left_from_0, true}, 1.0).real(), 1.128379167095512574, 1e-12);
    // D^a t = t^{1-a} / Gamma(2 - a)
    EXPECT_NEAR(weyl_marchaud(f, {0.3, Side::left_from_0, true}, 0.25).real(), std::pow(0.25, 0.7) / std::tgamma(1.7), 1e-12);
}

TEST(Marchaud, RightDerivativeOfReflection) {
    // right derivative of g(t) = 1 - t at T = 1 mirrors the left one of t, times e^{i pi a}
    const auto g = sampled(1024, [](double t) { return 1.0 - t; });
    const auto d = weyl_marchaud(g, {0.4, Side::right_from_T, true}, 0.5);
    const double mag = -std::pow(0.5, 0.6) / std::tgamma(1.6);
    EXPECT_NEAR(std::abs(d), std::abs(mag), 1e-12);
}

TEST(Zahle, SmoothPairMatchesRiemannStieltjes) {
    const auto f = sampled(4096, square), g = sampled(4096, sine);
    for (double a : {0.3, 0.45, 0.6}) {
        const auto r = zahle_integral(f, g, a);
        EXPECT_NEAR(r.raw, zahle_t2_sint, 1e-4) << a;
        EXPECT_EQ(r.verdict, Verdict::finite);
    }
}

TEST(Zahle, UnitIntegrandGivesIncrement) {
    const auto g = fbm(0.7, 512, 2);
    const auto f = sampled(512, one);
    EXPECT_NEAR(zahle_integral(f, g, 0.4).raw, g.x.back() - g.x.front(), 1e-12);
}

TEST(Zahle, BilinearInIntegrand) {
    const auto f = fbm(0.7, 512, 1), h = fbm(0.8, 512, 2), g = fbm(0.75, 512, 3);
    auto fh = f;
    for (std::size_t i = 0; i < fh.x.size(); ++i) fh.x[i] = 2.0 * f.x[i] - 3.0 * h.x[i];
    const double lhs = zahle_integral(fh, g, 0.4).raw;
    const double rhs = 2.0 * zahle_integral(f, g, 0.4).raw - 3.0 * zahle_integral(h, g, 0.4).raw;
    EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(rhs)));
}

TEST(Zahle, YoungPairAgreesWithForwardSum) {
    const auto f = fbm(0.75, 4096, 4), g = fbm(0.75, 4096, 5);
    std::vector<std::size_t> all(f.size());
    std::iota(all.begin(), all.end(), 0);
    const auto z = zahle_integral(f, g, 0.5);
    EXPECT_NEAR(z.raw, stieltjes_forward_sum(f, g, all), 0.05);
}

TEST(Zahle, GridMismatchThrows) {
    EXPECT_THROW(zahle_integral(sampled(64, square), sampled(128, sine), 0.5), Error);
    EXPECT_THROW(zahle_integral(sampled(64, square), sampled(64, sine), 1.0), Error);
}

TEST(ForwardSum, TelescopesForConstantIntegrand) {
    const auto g = fbm(0.5, 256, 1);
    const auto f = sampled(256, one);
    EXPECT_NEAR(stieltjes_forward_sum(f, g, std::vector<double>{0.0, 0.25, 0.75, 1.0}), g.x.back(), 1e-12);
}

TEST(ForwardSum, ExtremalSumsBracketEveryPartition) {
    const auto X = fbm(0.8, 256, 3);
    auto f = X;
    for (double& v : f.x) v = v > 0.0 ? 1.0 : 0.0;
    const double hi = extremal_forward_sum(f, X, 8, true), lo = extremal_forward_sum(f, X, 8, false);
    const auto p = continuity_partition(f, 8);
    const double s = stieltjes_forward_sum(f, X, p);
    EXPECT_LE(lo, s + 1e-12);
    EXPECT_GE(hi, s - 1e-12);
}

TEST(Hardy, LinearFunctionReference) {
    const auto h = hardy_bound_report(sampled(2048, ident), 0.4, 2.0);
    EXPECT_NEAR(h.lhs, 1.0 / 2.2, 1e-3);
    EXPECT_NEAR(h.rhs, 2.0 / (1.2 * 2.2) + 1.0 / 3.0, 2e-3);
    EXPECT_LT(h.ratio, 1.0);
    EXPECT_THROW(hardy_bound_report(sampled(64, ident), 0.5, 2.0), Error);
}

TEST(ExistenceCheck, BranchesAndVerdicts) {
    const auto f = fbm(0.7, 1024, 1), g = fbm(0.7, 1024, 2);
    const auto ok = zahle_existence_check(f, g, 0.6, 2.0, 0.6, 2.0);
    EXPECT_TRUE(ok.hypotheses_pass);
    EXPECT_TRUE(ok.direct_branch);
    EXPECT_EQ(ok.verdict, "pass");
    EXPECT_GT(ok.alpha, 0.4);
    EXPECT_LT(ok.alpha, 0.6);
    const auto bad = zahle_existence_check(f, g, 0.3, 2.0, 0.3, 2.0);
    EXPECT_EQ(bad.verdict, "hypotheses fail");
    const auto adj = zahle_existence_check(f, g, 0.8, 1.5, 0.8, 1.5);
    EXPECT_FALSE(adj.direct_branch);
    EXPECT_EQ(adj.verdict, "pass (validated via exponent-adjusted rerun)");
}
