#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace fracpath::detail {

struct GaussRule {
    std::vector<double> nodes;  // on [-1, 1]
    std::vector<double> weights;
};

inline GaussRule gauss_legendre(int n) {
    GaussRule g;
    g.nodes.resize(static_cast<std::size_t>(n));
    g.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0, p1 = x;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.nodes[static_cast<std::size_t>(i)] = -x;
        g.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        g.weights[static_cast<std::size_t>(i)] = w;
        g.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return g;
}

inline const GaussRule& gauss16() {
    static const GaussRule g = gauss_legendre(16);
    return g;
}

template <class F>
double gauss_panel(F&& f, double a, double b, const GaussRule& g = gauss16()) {
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * f(m + h * g.nodes[i]);
    return h * s;
}

// Integral of f over the interval between s and s + L (L may be negative) for f ~ A |x - s|^{-e} near s, e < 1.
// Panels are graded geometrically toward s; the last sliver uses that local power law.
template <class F>
double graded_integral(F&& f, double s, double L, double e, int levels = 56) {
    double total = 0.0;
    double outer = 1.0;
    const double floor_scale = 1e-13 * std::max(1.0, std::abs(s));
    for (int k = 0; k < levels && std::abs(outer * L) > floor_scale; ++k) {
        const double inner = outer * 0.5;
        total += gauss_panel(f, std::min(s + inner * L, s + outer * L), std::max(s + inner * L, s + outer * L));
        outer = inner;
    }
    const double eps = std::abs(outer * L);
    const double probe = f(s + (L > 0 ? eps : -eps));
    total += probe * eps / (1.0 - e);
    return total;
}

// Integral of f over [s, +/-infinity) for f ~ A |x|^{-d} at infinity, d > 1.
template <class F>
double tail_integral(F&& f, double s, double L0, int direction, double d, int levels = 64) {
    double total = 0.0;
    double a = 0.0, width = L0;
    for (int k = 0; k < levels; ++k) {
        const double lo = s + direction * a, hi = s + direction * (a + width);
        total += gauss_panel(f, std::min(lo, hi), std::max(lo, hi));
        a += width;
        width *= 2.0;
    }
    const double R = s + direction * a;
    const double far = std::abs(R);
    total += f(R) * far / (d - 1.0);
    return total;
}

// Integral over the real line of f with integrable power singularities (|x - s|^{-e},
// e < 1) at the given points and |x|^{-d} decay (d > 1) at infinity.
template <class F>
double singular_line_integral(F&& f, std::vector<double> pts, double e, double d) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty()) pts.push_back(0.0);
    double span = pts.back() - pts.front();
    const double L0 = span > 0.0 ? span : 1.0;
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double half = 0.5 * (pts[k + 1] - pts[k]);
        total += graded_integral(f, pts[k], half, e);
        total += graded_integral(f, pts[k + 1], -half, e);
    }
    total += graded_integral(f, pts.front(), -L0, e);
    total += graded_integral(f, pts.back(), L0, e);
    total += tail_integral(f, pts.front() - L0, L0, -1, d);
    total += tail_integral(f, pts.back() + L0, L0, +1, d);
    return total;
}

}  // namespace fracpath::detail
