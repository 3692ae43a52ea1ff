#pragma once

#include <vector>

#include "core.hpp"
#include "occupation.hpp"
#include "potential.hpp"

namespace fracpath {

enum class BVKind { indicator_interval, staircase, indicator_box, indicator_ball, smooth_bump, riesz_kernel_kind };

inline const char* to_string(BVKind k) {
    switch (k) {
        case BVKind::indicator_interval: return "indicator_interval";
        case BVKind::staircase: return "staircase";
        case BVKind::indicator_box: return "indicator_box";
        case BVKind::indicator_ball: return "indicator_ball";
        case BVKind::smooth_bump: return "smooth_bump";
        default: return "riesz_kernel_kind";
    }
}

// Closed-form BV families; every value is multiplied by scale.
struct BVFunction {
    BVKind kind = BVKind::indicator_interval;
    int dim = 1;
    double scale = 1.0;
    double a = 0.0, b = 1.0;                 // indicator_interval
    double base = 0.0;                       // staircase value left of all jumps
    std::vector<double> jumps, heights;      // staircase
    std::vector<double> lo, hi;              // indicator_box
    std::vector<double> center;              // ball, bump
    double radius = 1.0;                     // ball, bump
    double gamma = 1.5;                      // riesz_kernel_kind
    double cutoff = 1.0;                     // riesz_kernel_kind gradient grid [-cutoff, cutoff]^n
};

inline BVFunction indicator_interval(double a, double b) {
    if (!(a < b)) throw Error("indicator_interval: need a < b");
    BVFunction f;
    f.a = a;
    f.b = b;
    return f;
}

inline BVFunction staircase(std::vector<double> jumps, std::vector<double> heights, double base = 0.0) {
    if (jumps.size() != heights.size()) throw Error("staircase: jumps and heights differ in length");
    for (std::size_t k = 1; k < jumps.size(); ++k)
        if (!(jumps[k] > jumps[k - 1])) throw Error("staircase: jump locations must increase strictly");
    BVFunction f;
    f.kind = BVKind::staircase;
    f.jumps = std::move(jumps);
    f.heights = std::move(heights);
    f.base = base;
    return f;
}

inline BVFunction constant_function(double c) { return staircase({}, {}, c); }

inline BVFunction indicator_box(std::vector<double> lo, std::vector<double> hi) {
    if (lo.size() != hi.size() || lo.empty()) throw Error("indicator_box: corner dimension mismatch");
    for (std::size_t k = 0; k < lo.size(); ++k)
        if (!(lo[k] < hi[k])) throw Error("indicator_box: need lo < hi");
    BVFunction f;
    f.kind = BVKind::indicator_box;
    f.dim = static_cast<int>(lo.size());
    f.lo = std::move(lo);
    f.hi = std::move(hi);
    return f;
}

inline BVFunction indicator_ball(std::vector<double> center, double radius) {
    if (!(radius > 0.0)) throw Error("indicator_ball: radius must be positive");
    BVFunction f;
    f.kind = BVKind::indicator_ball;
    f.dim = static_cast<int>(center.size());
    f.center = std::move(center);
    f.radius = radius;
    return f;
}

// A (1 - |x - c|^2 / R^2)^2 inside B(c, R), zero outside; C^1.
inline BVFunction smooth_bump(std::vector<double> center, double R, double amplitude = 1.0) {
    if (!(R > 0.0)) throw Error("smooth_bump: radius must be positive");
    BVFunction f;
    f.kind = BVKind::smooth_bump;
    f.dim = static_cast<int>(center.size());
    f.center = std::move(center);
    f.radius = R;
    f.scale = amplitude;
    return f;
}

inline BVFunction riesz_kernel_function(int n, double gamma, double cutoff = 1.0) {
    if (n < 2) throw Error("riesz_kernel_kind: need n >= 2");
    if (!(gamma > 1.0 && gamma < n)) throw Error("riesz_kernel_kind: need 1 < gamma < n");
    BVFunction f;
    f.kind = BVKind::riesz_kernel_kind;
    f.dim = n;
    f.gamma = gamma;
    f.cutoff = cutoff;
    return f;
}

inline BVFunction scaled(BVFunction f, double c) {
    f.scale *= c;
    return f;
}

struct Representative {
    double value = 0.0;
    bool on_singular_set = false;
};

// Approximate limit off the jump set; symmetric mean (the Lebesgue density of the set
// for indicators) on it.
inline Representative evaluate_representative(const BVFunction& f, std::span<const double> x) {
    if (static_cast<int>(x.size()) != f.dim) throw Error("representative: point dimension mismatch");
    Representative r;
    switch (f.kind) {
        case BVKind::indicator_interval: {
            const double v = x[0];
            if (v == f.a || v == f.b) {
                r.value = 0.5;
                r.on_singular_set = true;
            } else {
                r.value = (v > f.a && v < f.b) ? 1.0 : 0.0;
            }
            break;
        }
        case BVKind::staircase: {
            double s = f.base;
            for (std::size_t k = 0; k < f.jumps.size(); ++k) {
                if (x[0] > f.jumps[k]) s += f.heights[k];
                if (x[0] == f.jumps[k]) {
                    s += 0.5 * f.heights[k];
                    r.on_singular_set = true;
                }
            }
            r.value = s;
            break;
        }
        case BVKind::indicator_box: {
            double density = 1.0;
            for (int k = 0; k < f.dim; ++k) {
                const double v = x[static_cast<std::size_t>(k)];
                const double lo = f.lo[static_cast<std::size_t>(k)], hi = f.hi[static_cast<std::size_t>(k)];
                if (v == lo || v == hi) {
                    density *= 0.5;
                    r.on_singular_set = true;
                } else if (!(v > lo && v < hi)) {
                    density = 0.0;
                }
            }
            if (density == 0.0) r.on_singular_set = false;
            r.value = density;
            break;
        }
        case BVKind::indicator_ball: {
            const double d = distance(x, f.center);
            if (d == f.radius) {
                r.value = 0.5;
                r.on_singular_set = true;
            } else {
                r.value = d < f.radius ? 1.0 : 0.0;
            }
            break;
        }
        case BVKind::smooth_bump: {
            const double rho2 = std::pow(distance(x, f.center) / f.radius, 2);
            r.value = rho2 < 1.0 ? (1.0 - rho2) * (1.0 - rho2) : 0.0;
            break;
        }
        case BVKind::riesz_kernel_kind: {
            double n2 = 0.0;
            for (double v : x) n2 += v * v;
            if (n2 == 0.0) {
                r.on_singular_set = true;
                r.value = inf;
                return r;
            }
            r.value = riesz_kernel(f.gamma, f.dim, std::sqrt(n2));
            break;
        }
    }
    r.value *= f.scale;
    return r;
}

namespace detail {

// Midpoints of a regular subdivision of [lo_k, hi_k] over the listed axes, with cell size <= h.
inline void tensor_cells(const std::vector<double>& lo, const std::vector<double>& hi, double h,
                         const std::vector<int>& axes, std::vector<std::vector<double>>& centers, double& cell) {
    std::vector<std::size_t> counts;
    cell = 1.0;
    for (int k : axes) {
        const double side = hi[static_cast<std::size_t>(k)] - lo[static_cast<std::size_t>(k)];
        const auto c = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(side / h - 1e-9)));
        counts.push_back(c);
        cell *= side / static_cast<double>(c);
    }
    std::size_t total = 1;
    for (auto c : counts) total *= c;
    centers.clear();
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::vector<double> p = lo;
        std::size_t rest = flat;
        for (std::size_t j = axes.size(); j-- > 0;) {
            const int k = axes[j];
            const std::size_t idx = rest % counts[j];
            rest /= counts[j];
            const double side = hi[static_cast<std::size_t>(k)] - lo[static_cast<std::size_t>(k)];
            p[static_cast<std::size_t>(k)] = lo[static_cast<std::size_t>(k)] + (static_cast<double>(idx) + 0.5) * side / static_cast<double>(counts[j]);
        }
        centers.push_back(std::move(p));
    }
}

}  // namespace detail

// ||D phi|| as atoms. Interval and staircase atoms are exact Dirac masses; boxes and balls
// get equal-area boundary patches with centroid atoms; bump and Riesz kinds get |grad phi| h^n
// on a grid of spacing h. cell_width = h.
inline DiscreteMeasure gradient_measure(const BVFunction& f, double h) {
    if (!(h > 0.0)) throw Error("gradient measure: resolution must be positive");
    DiscreteMeasure m;
    m.dim = f.dim;
    m.cell_width = h;
    const double s = std::abs(f.scale);
    const int n = f.dim;
    switch (f.kind) {
        case BVKind::indicator_interval:
            m.point_masses = true;
            m.add(std::span<const double>(&f.a, 1), s);
            m.add(std::span<const double>(&f.b, 1), s);
            break;
        case BVKind::staircase:
            m.point_masses = true;
            for (std::size_t k = 0; k < f.jumps.size(); ++k)
                m.add(std::span<const double>(&f.jumps[k], 1), s * std::abs(f.heights[k]));
            break;
        case BVKind::indicator_box: {
            for (int k = 0; k < n; ++k) {
                std::vector<int> axes;
                for (int j = 0; j < n; ++j)
                    if (j != k) axes.push_back(j);
                std::vector<std::vector<double>> centers;
                double cell = 1.0;
                detail::tensor_cells(f.lo, f.hi, h, axes, centers, cell);
                for (double face : {f.lo[static_cast<std::size_t>(k)], f.hi[static_cast<std::size_t>(k)]})
                    for (auto p : centers) {
                        p[static_cast<std::size_t>(k)] = face;
                        m.add(p, s * cell);
                    }
            }
            if (n == 1) m.point_masses = true;
            break;
        }
        case BVKind::indicator_ball: {
            const double R = f.radius;
            if (n == 1) {
                m.point_masses = true;
                const double l = f.center[0] - R, r = f.center[0] + R;
                m.add(std::span<const double>(&l, 1), s);
                m.add(std::span<const double>(&r, 1), s);
            } else if (n == 2) {
                const auto M = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(2.0 * pi * R / h)));
                for (std::size_t j = 0; j < M; ++j) {
                    const double th = 2.0 * pi * (static_cast<double>(j) + 0.5) / static_cast<double>(M);
                    const double p[2] = {f.center[0] + R * std::cos(th), f.center[1] + R * std::sin(th)};
                    m.add(p, s * 2.0 * pi * R / static_cast<double>(M));
                }
            } else if (n == 3) {
                const auto mz = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(2.0 * R / h)));
                const auto mp = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(2.0 * pi * R / h)));
                const double patch = 4.0 * pi * R * R / static_cast<double>(mz * mp);
                for (std::size_t i = 0; i < mz; ++i) {
                    const double z = -R + 2.0 * R * (static_cast<double>(i) + 0.5) / static_cast<double>(mz);
                    const double rr = std::sqrt(R * R - z * z);
                    for (std::size_t j = 0; j < mp; ++j) {
                        const double ph = 2.0 * pi * (static_cast<double>(j) + 0.5) / static_cast<double>(mp);
                        const double p[3] = {f.center[0] + rr * std::cos(ph), f.center[1] + rr * std::sin(ph), f.center[2] + z};
                        m.add(p, s * patch);
                    }
                }
            } else {
                throw Error("indicator_ball gradient measure implemented for n <= 3");
            }
            break;
        }
        case BVKind::smooth_bump: {
            std::vector<double> lo(f.center), hi(f.center);
            for (int k = 0; k < n; ++k) {
                lo[static_cast<std::size_t>(k)] -= f.radius;
                hi[static_cast<std::size_t>(k)] += f.radius;
            }
            std::vector<int> axes(static_cast<std::size_t>(n));
            std::iota(axes.begin(), axes.end(), 0);
            std::vector<std::vector<double>> centers;
            double cell = 1.0;
            detail::tensor_cells(lo, hi, h, axes, centers, cell);
            for (const auto& p : centers) {
                const double d = distance(p, f.center);
                const double rho2 = (d / f.radius) * (d / f.radius);
                if (rho2 >= 1.0 || d == 0.0) continue;
                const double g = 4.0 * (1.0 - rho2) * d / (f.radius * f.radius);
                m.add(p, s * g * cell);
            }
            break;
        }
        case BVKind::riesz_kernel_kind: {
            auto count = static_cast<std::size_t>(std::ceil(2.0 * f.cutoff / h));
            if (count % 2 == 1) ++count;
            const double step = 2.0 * f.cutoff / static_cast<double>(count);
            std::vector<double> lo(static_cast<std::size_t>(n), -f.cutoff), hi(static_cast<std::size_t>(n), f.cutoff);
            std::vector<int> axes(static_cast<std::size_t>(n));
            std::iota(axes.begin(), axes.end(), 0);
            std::vector<std::vector<double>> centers;
            double cell = 1.0;
            detail::tensor_cells(lo, hi, step, axes, centers, cell);
            const double c = riesz_constant(f.gamma, n);
            for (const auto& p : centers) {
                double r2 = 0.0;
                for (double v : p) r2 += v * v;
                const double r = std::sqrt(r2);
                m.add(p, s * c * (n - f.gamma) * std::pow(r, f.gamma - n - 1.0) * cell);
            }
            m.cell_width = step;
            break;
        }
    }
    return m;
}

inline double total_variation(const DiscreteMeasure& m) { return m.mass(); }

// M_gamma nu(x) = max over the radii of r^{gamma - n} nu(B(x, r)); default radii are 256
// log-spaced values from cell_width to twice the larger of the support diameter and the
// farthest atom distance.
inline double maximal_function(const DiscreteMeasure& m, double gamma, std::span<const double> x,
                               std::vector<double> radii = {}) {
    if (!(gamma > 0.0 && gamma < m.dim)) throw Error("maximal function: need 0 < gamma < n");
    if (m.size() == 0) return 0.0;
    if (radii.empty()) {
        double far = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i) far = std::max(far, distance(m.point(i), x));
        const double top = 2.0 * std::max({support_diameter(m), far, m.cell_width});
        radii = log_grid(m.cell_width, std::max(top, 2.0 * m.cell_width), 256);
    }
    double best = 0.0;
    for (double r : radii) best = std::max(best, std::pow(r, gamma - m.dim) * ball_mass(m, x, r));
    return best;
}

// U^{1-s} ||D phi||(x).
inline double gradient_potential(const BVFunction& f, double s, std::span<const double> x, double h) {
    if (!(s > 0.0 && s < 1.0)) throw Error("gradient potential: need s in (0, 1)");
    const DiscreteMeasure m = gradient_measure(f, h);
    if (m.size() == 0) return 0.0;
    return riesz_potential(m, 1.0 - s, x);
}

}  // namespace fracpath
