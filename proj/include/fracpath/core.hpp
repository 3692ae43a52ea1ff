#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracpath {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr double pi = 3.14159265358979323846;

enum class Interpolation { piecewise_linear, cadlag };

inline const char* to_string(Interpolation k) {
    return k == Interpolation::cadlag ? "cadlag" : "piecewise_linear";
}

// Samples X_{t_i} on the uniform grid t_i = t0 + i*dt, i = 0..N, stored row-major.
struct SampledPath {
    int dim = 1;
    double t0 = 0.0;
    double dt = 0.0;
    Interpolation interp = Interpolation::piecewise_linear;
    std::vector<double> x;

    std::size_t size() const { return dim > 0 ? x.size() / static_cast<std::size_t>(dim) : 0; }
    std::size_t steps() const { return size() == 0 ? 0 : size() - 1; }
    double horizon() const { return dt * static_cast<double>(steps()); }
    double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
    double at(std::size_t i, int k = 0) const { return x[i * static_cast<std::size_t>(dim) + k]; }
    std::span<const double> point(std::size_t i) const {
        return {x.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }
};

inline SampledPath make_path(int dim, double T, Interpolation interp, std::vector<double> values,
                             double t0 = 0.0) {
    if (dim < 1) throw Error("path dimension must be >= 1");
    if (!(T > 0.0) || !std::isfinite(T)) throw Error("horizon must be positive and finite");
    if (values.size() % static_cast<std::size_t>(dim) != 0) throw Error("sample count is not a multiple of dim");
    const std::size_t count = values.size() / static_cast<std::size_t>(dim);
    if (count < 2) throw Error("a path needs at least N = 1 step");
    for (double v : values)
        if (!std::isfinite(v)) throw Error("non-finite sample in path");
    SampledPath p;
    p.dim = dim;
    p.t0 = t0;
    p.dt = T / static_cast<double>(count - 1);
    p.interp = interp;
    p.x = std::move(values);
    return p;
}

struct TimeWindow {
    double start = 0.0;
    double end = 0.0;
    double length() const { return end - start; }
};

inline SampledPath restrict(const SampledPath& path, TimeWindow w) {
    const double tend = path.t0 + path.horizon();
    const double eps = 1e-9 * path.dt;
    if (w.start < path.t0 - eps || w.end > tend + eps || !(w.end > w.start))
        throw Error("window outside path domain");
    if (w.length() < 2.0 * path.dt - eps) throw Error("window under-resolved");
    const auto first = static_cast<std::size_t>(std::ceil((w.start - path.t0) / path.dt - 1e-9));
    const auto last = static_cast<std::size_t>(std::floor((w.end - path.t0) / path.dt + 1e-9));
    SampledPath out;
    out.dim = path.dim;
    out.dt = path.dt;
    out.t0 = path.time(first);
    out.interp = path.interp;
    const auto d = static_cast<std::size_t>(path.dim);
    out.x.assign(path.x.begin() + static_cast<std::ptrdiff_t>(first * d),
                 path.x.begin() + static_cast<std::ptrdiff_t>((last + 1) * d));
    return out;
}

// Keeps every k-th sample; N must be divisible by k.
inline SampledPath decimate(const SampledPath& path, std::size_t k) {
    if (k == 0 || path.steps() % k != 0) throw Error("decimation factor must divide N");
    if (path.steps() / k < 1) throw Error("decimation leaves no steps");
    SampledPath out;
    out.dim = path.dim;
    out.t0 = path.t0;
    out.dt = path.dt * static_cast<double>(k);
    out.interp = path.interp;
    const auto d = static_cast<std::size_t>(path.dim);
    for (std::size_t i = 0; i < path.size(); i += k)
        out.x.insert(out.x.end(), path.x.begin() + static_cast<std::ptrdiff_t>(i * d),
                     path.x.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
    return out;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

namespace detail {

inline double cross(const std::pair<double, double>& o, const std::pair<double, double>& a,
                    const std::pair<double, double>& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

inline std::vector<std::pair<double, double>> convex_hull(std::vector<std::pair<double, double>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<std::pair<double, double>> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

}  // namespace detail

// Exact maximal pairwise distance of the sample set.
inline double path_diameter(const SampledPath& path) {
    const std::size_t m = path.size();
    if (path.dim == 1) {
        auto [lo, hi] = std::minmax_element(path.x.begin(), path.x.end());
        return *hi - *lo;
    }
    if (path.dim == 2) {
        std::vector<std::pair<double, double>> pts(m);
        for (std::size_t i = 0; i < m; ++i) pts[i] = {path.at(i, 0), path.at(i, 1)};
        const auto hull = detail::convex_hull(std::move(pts));
        double best = 0.0;
        for (std::size_t i = 0; i < hull.size(); ++i)
            for (std::size_t j = i + 1; j < hull.size(); ++j)
                best = std::max(best, std::hypot(hull[i].first - hull[j].first, hull[i].second - hull[j].second));
        return best;
    }
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) best = std::max(best, distance(path.point(i), path.point(j)));
    return best;
}

// Atoms with weights. cell_width is the resolution below which an atom stands for
// mass spread over a cell; point_masses marks genuine Dirac atoms.
struct DiscreteMeasure {
    int dim = 1;
    std::vector<double> pts;
    std::vector<double> w;
    double cell_width = 0.0;
    bool point_masses = false;

    std::size_t size() const { return w.size(); }
    std::span<const double> point(std::size_t i) const {
        return {pts.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }
    double mass() const { return std::accumulate(w.begin(), w.end(), 0.0); }
    void add(std::span<const double> p, double weight) {
        pts.insert(pts.end(), p.begin(), p.end());
        w.push_back(weight);
    }
};

inline DiscreteMeasure make_measure(int dim, std::vector<double> pts, std::vector<double> w, double cell_width,
                                    bool point_masses = false) {
    if (dim < 1) throw Error("measure dimension must be >= 1");
    if (pts.size() != w.size() * static_cast<std::size_t>(dim)) throw Error("atom/weight size mismatch");
    for (double v : w)
        if (!(v >= 0.0) || !std::isfinite(v)) throw Error("atom weights must be finite and nonnegative");
    for (double v : pts)
        if (!std::isfinite(v)) throw Error("non-finite atom location");
    if (!(cell_width > 0.0)) throw Error("cell_width must be positive");
    return DiscreteMeasure{dim, std::move(pts), std::move(w), cell_width, point_masses};
}

inline double support_diameter(const DiscreteMeasure& m) {
    double best = 0.0;
    if (m.dim == 1) {
        if (m.size() == 0) return 0.0;
        auto [lo, hi] = std::minmax_element(m.pts.begin(), m.pts.end());
        return *hi - *lo;
    }
    SampledPath tmp;
    tmp.dim = m.dim;
    tmp.x = m.pts;
    return m.size() < 2 ? best : path_diameter(tmp);
}

inline std::vector<double> centroid(const DiscreteMeasure& m) {
    std::vector<double> c(static_cast<std::size_t>(m.dim), 0.0);
    const double M = m.mass();
    if (!(M > 0.0)) return c;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (int k = 0; k < m.dim; ++k) c[static_cast<std::size_t>(k)] += m.w[i] * m.point(i)[static_cast<std::size_t>(k)];
    for (double& v : c) v /= M;
    return c;
}

enum class Verdict { finite, divergent, not_assessed };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::finite: return "finite";
        case Verdict::divergent: return "divergent";
        default: return "not_assessed";
    }
}

// value carries the +inf sentinel on divergence; raw keeps the finest-level number.
struct EstimateReport {
    double value = 0.0;
    double raw = 0.0;
    double refinement_delta = std::numeric_limits<double>::quiet_NaN();
    Verdict verdict = Verdict::not_assessed;
    std::vector<double> ladder;
    std::map<std::string, double> resolution;
    std::string note;

    bool diverged() const { return verdict == Verdict::divergent; }
};

// Ladder ordered coarse to fine. Divergent when the last three values increase and
// the increments do not contract (a convergent sequence of order > 0.23 contracts by < 0.85).
inline Verdict classify_ladder(const std::vector<double>& v) {
    if (v.size() < 3) return Verdict::not_assessed;
    for (double a : v)
        if (std::isinf(a) && a > 0) return Verdict::divergent;
    const std::size_t n = v.size();
    const double a = v[n - 3], b = v[n - 2], c = v[n - 1];
    const bool increasing = a < b && b < c;
    const bool sustained = (c - b) >= 0.85 * (b - a);
    const bool material = (c - a) > 1e-3 * std::abs(c);
    return increasing && sustained && material ? Verdict::divergent : Verdict::finite;
}

inline EstimateReport report_from_ladder(std::vector<double> ladder, bool assess_trend = true) {
    EstimateReport r;
    r.raw = ladder.back();
    if (ladder.size() >= 2) r.refinement_delta = std::abs(ladder[ladder.size() - 1] - ladder[ladder.size() - 2]);
    r.verdict = assess_trend ? classify_ladder(ladder) : Verdict::not_assessed;
    if (r.verdict == Verdict::not_assessed && std::isinf(r.raw)) r.verdict = Verdict::divergent;
    r.value = r.verdict == Verdict::divergent ? inf : r.raw;
    r.ladder = std::move(ladder);
    return r;
}

inline double conjugate_exponent(double p) {
    if (p == 1.0) return inf;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

inline double unit_sphere_area(int n) {
    return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
}

inline double unit_ball_volume(int n) {
    return std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

}  // namespace fracpath
