#include <gtest/gtest.h>

#include <fracpath/core.hpp>
#include <fracpath/csv.hpp>
#include <fracpath/rng.hpp>

#include <sstream>

using namespace fracpath;

TEST(Path, RejectsBadInput) {
    EXPECT_THROW(make_path(1, 1.0, Interpolation::piecewise_linear, {0.0}), Error);
    EXPECT_THROW(make_path(1, 0.0, Interpolation::piecewise_linear, {0.0, 1.0}), Error);
    EXPECT_THROW(make_path(2, 1.0, Interpolation::piecewise_linear, {0.0, 1.0, 2.0}), Error);
    EXPECT_THROW(make_path(1, 1.0, Interpolation::piecewise_linear, {0.0, std::nan("")}), Error);
}

TEST(Path, DecimateKeepsEndpoints) {
    std::vector<double> v(17);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i * i);
    const auto p = make_path(1, 2.0, Interpolation::piecewise_linear, v);
    const auto d = decimate(p, 4);
    ASSERT_EQ(d.size(), 5u);
    EXPECT_DOUBLE_EQ(d.dt, 0.5);
    EXPECT_EQ(d.x.back(), 256.0);
    EXPECT_EQ(d.x[1], 16.0);
    EXPECT_THROW(decimate(p, 3), Error);
}

TEST(Path, RestrictAndDiameter) {
    const auto p = make_path(1, 1.0, Interpolation::piecewise_linear, {0.0, 2.0, -1.0, 0.5, 0.0});
    const auto r = restrict(p, {0.25, 0.75});
    ASSERT_EQ(r.size(), 3u);
    EXPECT_DOUBLE_EQ(r.t0, 0.25);
    EXPECT_DOUBLE_EQ(path_diameter(p), 3.0);
    EXPECT_DOUBLE_EQ(path_diameter(r), 3.0);
}

TEST(Path, PlanarDiameterIsHullDiameter) {
    const auto p = make_path(2, 1.0, Interpolation::piecewise_linear, {0, 0, 1, 0, 1, 1, 0, 1, 0.5, 0.5});
    EXPECT_NEAR(path_diameter(p), std::sqrt(2.0), 1e-15);
}

TEST(Ladder, Classification) {
    EXPECT_EQ(classify_ladder({1.0, 2.0}), Verdict::not_assessed);
    EXPECT_EQ(classify_ladder({1.0, 2.0, 3.0}), Verdict::divergent);
    EXPECT_EQ(classify_ladder({1.0, 1.5, 1.75}), Verdict::finite);
    EXPECT_EQ(classify_ladder({1.0, 2.0, inf}), Verdict::divergent);
    const auto r = report_from_ladder({1.0, 2.0, 4.0});
    EXPECT_TRUE(r.diverged());
    EXPECT_TRUE(std::isinf(r.value));
    EXPECT_EQ(r.raw, 4.0);
    EXPECT_EQ(r.refinement_delta, 2.0);
}

TEST(Exponents, ConjugateAndBalls) {
    EXPECT_DOUBLE_EQ(conjugate_exponent(2.0), 2.0);
    EXPECT_TRUE(std::isinf(conjugate_exponent(1.0)));
    EXPECT_DOUBLE_EQ(conjugate_exponent(inf), 1.0);
    EXPECT_NEAR(unit_ball_volume(2), pi, 1e-14);
    EXPECT_NEAR(unit_ball_volume(3), 4.0 * pi / 3.0, 1e-14);
    EXPECT_NEAR(unit_sphere_area(3), 4.0 * pi, 1e-14);
}

TEST(Measure, SupportDiameterAndCentroid) {
    const auto m = make_measure(2, {0, 0, 3, 4, 0, 4}, {1, 1, 2}, 0.1);
    EXPECT_DOUBLE_EQ(support_diameter(m), 5.0);
    const auto c = centroid(m);
    EXPECT_DOUBLE_EQ(c[0], 0.75);
    EXPECT_DOUBLE_EQ(c[1], 3.0);
    EXPECT_THROW(make_measure(1, {0.0}, {-1.0}, 0.1), Error);
}

TEST(Csv, SeventeenDigitsAndSentinels) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(inf), "inf");
    EXPECT_EQ(format_double(-inf), "-inf");
    EXPECT_EQ(format_double(1.0), "1");
    std::ostringstream s;
    CsvWriter w(s, {"a", "b"});
    w.write_row(row(std::string("x,y"), 2.5));
    EXPECT_EQ(s.str(), "a,b\n\"x,y\",2.5\n");
    EXPECT_THROW(w.write_row(row(1.0)), Error);
}

TEST(Rng, CounterStreamsAreReproducibleAndDistinct) {
    CounterRng a(7, 0), b(7, 0), c(7, 1);
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next();
        EXPECT_EQ(x, b.next());
        EXPECT_NE(x, c.next());
    }
}

TEST(Rng, NormalMoments) {
    CounterRng r(3, 0);
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        s += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.015);
    for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below(7), 7u);
}
