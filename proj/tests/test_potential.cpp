#include <gtest/gtest.h>

#include <fracpath/occupation.hpp>
#include <fracpath/pathgen.hpp>
#include <fracpath/potential.hpp>

using namespace fracpath;

namespace {

SampledPath linear(std::size_t N) {
    GeneratorConfig g;
    g.family = "linear";
    g.N = N;
    return generate_path(g, 0);
}

}  // namespace

// Reference values from arbitrary-precision evaluation of the closed forms.
TEST(Riesz, ConstantMatchesReference) {
    EXPECT_NEAR(riesz_constant(0.7, 1), 0.848457384359951112, 1e-15);
    EXPECT_NEAR(riesz_constant(0.5, 1), 1.0 / std::sqrt(2.0 * pi), 1e-15);
    EXPECT_THROW(riesz_constant(1.0, 1), Error);
}

TEST(Riesz, SemigroupAtUnitDistance) {
    for (auto [a, b] : {std::pair{0.3, 0.4}, std::pair{0.2, 0.5}, std::pair{0.45, 0.45}})
        EXPECT_NEAR(kernel_convolution_1d(a, b, 1.0) / riesz_kernel(a + b, 1, 1.0), 1.0, 1e-3) << a << " " << b;
}

TEST(Riesz, CellAverageIsKernelMeanOverBall) {
    // midpoint rule in u = r^g, where the integrand r^{g-1} dr becomes du / g
    const double rho = 0.02, g = 0.4;
    double s = 0.0;
    const int n = 1000;
    for (int i = 0; i < n; ++i) s += riesz_constant(g, 1) / g * (std::pow(rho, g) / n);
    EXPECT_NEAR(riesz_cell_average(g, 1, rho), s / rho, 1e-12 * s / rho);
}

TEST(Energy, LebesgueIntervalMatchesClosedForm) {
    const auto e = energy(occupation_measure(linear(4096)), 0.3, 2.0);
    EXPECT_NEAR(e.raw, 1.190033849208883335, 0.012);
    EXPECT_EQ(e.verdict, Verdict::finite);
}

TEST(Energy, PointMassIsInfiniteForQAboveThreshold) {
    const auto m = make_measure(1, {0.0}, {1.0}, 1e-3, true);
    EXPECT_TRUE(energy(m, 0.3, 2.0).diverged());
}

TEST(Energy, ScalesAsMassToTheQ) {
    auto m = occupation_measure(linear(1024));
    const double e1 = energy(m, 0.4, 2.0).raw;
    for (double& w : m.w) w *= 3.0;
    EXPECT_NEAR(energy(m, 0.4, 2.0).raw / e1, 9.0, 1e-9);
}

TEST(Energy, MutualEnergySelfPairingPositive) {
    const auto m = occupation_measure(linear(256));
    EXPECT_GT(mutual_energy(m, m, 0.3, 1.0), 0.0);
}

TEST(Energy, MultiEnergyIdentity) {
    const auto mu = make_measure(1, {0.0, 0.7}, {0.5, 0.5}, 1e-3, true);
    const auto nu = make_measure(1, {0.3, -0.4}, {1.0, 2.0}, 1e-3, true);
    for (int p : {1, 2}) {
        const auto [lhs, rhs] = multi_energy_identity_check(mu, nu, 0.3, 0.4, p);
        EXPECT_NEAR(lhs / rhs, 1.0, 1e-5) << p;
    }
}

TEST(Wolff, UnitAtomClosedForm) {
    const auto m = make_measure(1, {0.0}, {1.0}, 1e-2, false);
    const double x = 0.0;
    EXPECT_NEAR(wolff_potential(m, 0.25, 2.0, {&x, 1}), 4.0 / std::sqrt(0.005), 0.06);
}

TEST(Wolff, EnergyComparisonIsTwoSided) {
    GeneratorConfig g;
    g.family = "fbm";
    g.N = 512;
    const auto m = occupation_measure(generate_path(g, 2));
    const Box box = default_box(m);
    const auto c = wolff_energy_comparison(m, 0.3, 2.0, {}, box, (box.hi[0] - box.lo[0]) / 1024.0);
    const double ratio = c.lhs / c.rhs;
    EXPECT_GT(ratio, 0.05);
    EXPECT_LT(ratio, 20.0);
}

TEST(NegativeSobolev, IsEnergyRoot) {
    const auto m = occupation_measure(linear(1024));
    EXPECT_NEAR(std::pow(negative_sobolev_norm(m, -0.3, 2.0).raw, 2.0), energy(m, 0.3, 2.0).raw, 1e-12);
    EXPECT_THROW(negative_sobolev_norm(m, 0.3, 2.0), Error);
}
