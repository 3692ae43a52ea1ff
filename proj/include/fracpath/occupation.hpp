#pragma once

#include <map>
#include <vector>

#include "core.hpp"
#include "detail/parallel.hpp"

namespace fracpath {

namespace detail {

// Nearest-neighbour distance of every atom (sweep over atoms sorted by first coordinate).
inline std::vector<double> nearest_neighbour_distances(const DiscreteMeasure& m) {
    const std::size_t n = m.size();
    std::vector<double> nn(n, inf);
    if (n < 2) return nn;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double xa = m.point(a)[0], xb = m.point(b)[0];
        return xa < xb || (xa == xb && a < b);
    });
    if (m.dim == 1) {
        for (std::size_t k = 0; k < n; ++k) {
            double best = inf;
            if (k > 0) best = std::min(best, m.pts[order[k]] - m.pts[order[k - 1]]);
            if (k + 1 < n) best = std::min(best, m.pts[order[k + 1]] - m.pts[order[k]]);
            nn[order[k]] = best;
        }
        return nn;
    }
    parallel_for(n, [&](std::size_t k) {
        const auto p = m.point(order[k]);
        double best = inf;
        for (std::size_t j = k + 1; j < n; ++j) {
            const auto q = m.point(order[j]);
            if (q[0] - p[0] >= best) break;
            best = std::min(best, distance(p, q));
        }
        for (std::size_t j = k; j-- > 0;) {
            const auto q = m.point(order[j]);
            if (p[0] - q[0] >= best) break;
            best = std::min(best, distance(p, q));
        }
        nn[order[k]] = best;
    }, 64);
    return nn;
}

}  // namespace detail

// Median nearest-neighbour atom distance; falls back to the smallest positive distance,
// then to `fallback` when all atoms coincide.
inline double median_nn_distance(const DiscreteMeasure& m, double fallback) {
    auto nn = detail::nearest_neighbour_distances(m);
    nn.erase(std::remove_if(nn.begin(), nn.end(), [](double d) { return !std::isfinite(d); }), nn.end());
    if (nn.empty()) return fallback;
    std::sort(nn.begin(), nn.end());
    const double med = nn[nn.size() / 2];
    if (med > 0.0) return med;
    const auto pos = std::upper_bound(nn.begin(), nn.end(), 0.0);
    return pos == nn.end() ? fallback : *pos;
}

// Left-endpoint occupation measure: an atom X_{t_i} of weight dt for every sample of
// the window except the last, so the total mass equals the window length.
inline DiscreteMeasure occupation_measure(const SampledPath& path, TimeWindow window) {
    const SampledPath sub = restrict(path, window);
    DiscreteMeasure m;
    m.dim = sub.dim;
    const std::size_t count = sub.steps();
    m.pts.assign(sub.x.begin(), sub.x.begin() + static_cast<std::ptrdiff_t>(count * static_cast<std::size_t>(sub.dim)));
    m.w.assign(count, sub.dt);
    bool plateau = false;
    for (std::size_t i = 0; i < count && !plateau; ++i) {
        bool same = true;
        for (int k = 0; k < sub.dim; ++k) same = same && sub.at(i, k) == sub.at(i + 1, k);
        plateau = same;
    }
    m.point_masses = plateau;
    m.cell_width = median_nn_distance(m, sub.dt);
    return m;
}

inline DiscreteMeasure occupation_measure(const SampledPath& path) {
    return occupation_measure(path, {path.t0, path.t0 + path.horizon()});
}

// mu(B(x, r)) for the open ball.
inline double ball_mass(const DiscreteMeasure& m, std::span<const double> x, double r) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (distance(m.point(i), x) < r) s += m.w[i];
    return s;
}

// Open-ball mass queries against a fixed measure; atoms sorted by first coordinate.
class BallCounter {
public:
    explicit BallCounter(const DiscreteMeasure& m) : dim_(m.dim) {
        const std::size_t n = m.size();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return m.point(a)[0] < m.point(b)[0] || (m.point(a)[0] == m.point(b)[0] && a < b);
        });
        pts_.reserve(m.pts.size());
        w_.reserve(n);
        prefix_.assign(n + 1, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const auto p = m.point(order[k]);
            pts_.insert(pts_.end(), p.begin(), p.end());
            w_.push_back(m.w[order[k]]);
            first_.push_back(p[0]);
            prefix_[k + 1] = prefix_[k] + m.w[order[k]];
        }
    }

    double mass(std::span<const double> x, double r) const {
        const auto lo = std::upper_bound(first_.begin(), first_.end(), x[0] - r);
        const auto hi = std::lower_bound(first_.begin(), first_.end(), x[0] + r);
        const auto a = static_cast<std::size_t>(lo - first_.begin());
        const auto b = static_cast<std::size_t>(hi - first_.begin());
        if (b <= a) return 0.0;
        if (dim_ == 1) return prefix_[b] - prefix_[a];
        double s = 0.0;
        const auto d = static_cast<std::size_t>(dim_);
        for (std::size_t k = a; k < b; ++k) {
            double q = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                const double diff = pts_[k * d + c] - x[c];
                q += diff * diff;
            }
            if (q < r * r) s += w_[k];
        }
        return s;
    }

private:
    int dim_;
    std::vector<double> pts_, w_, first_, prefix_;
};

inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) throw Error("log grid needs 0 < lo < hi and >= 2 nodes");
    std::vector<double> g(count);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    return g;
}

// Least-squares slope of log sup_c mu(B(c, r)) against log r.
inline double upper_regularity_exponent(const DiscreteMeasure& m, const std::vector<std::vector<double>>& centers,
                                        const std::vector<double>& radii) {
    if (radii.size() < 2) throw Error("regularity: need at least two radii");
    if (centers.empty()) throw Error("regularity: need at least one center");
    const BallCounter counter(m);
    std::vector<double> sup(radii.size(), 0.0);
    parallel_for(radii.size(), [&](std::size_t j) {
        double best = 0.0;
        for (const auto& c : centers) best = std::max(best, counter.mass(c, radii[j]));
        sup[j] = best;
    }, 1);
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < radii.size(); ++j)
        if (sup[j] > 0.0) {
            lx.push_back(std::log(radii[j]));
            ly.push_back(std::log(sup[j]));
        }
    if (lx.size() < 2) throw Error("regularity: balls carry no mass");
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

// Every stride-th atom as a center.
inline std::vector<std::vector<double>> atom_centers(const DiscreteMeasure& m, std::size_t stride) {
    std::vector<std::vector<double>> c;
    for (std::size_t i = 0; i < m.size(); i += std::max<std::size_t>(stride, 1)) {
        const auto p = m.point(i);
        c.emplace_back(p.begin(), p.end());
    }
    return c;
}

// Slope over 8 log-spaced radii in [0.001, 0.03] x support diameter, with every 64th
// (n = 1) or 256th atom as a center.
inline double default_regularity_exponent(const DiscreteMeasure& m) {
    const double d = support_diameter(m);
    if (!(d > 0.0)) throw Error("regularity: support is a single point");
    return upper_regularity_exponent(m, atom_centers(m, m.dim == 1 ? 64 : 256), log_grid(1e-3 * d, 3e-2 * d, 8));
}

struct LocalTimeEstimate {
    int dim = 1;
    double bin_width = 0.0;
    std::vector<double> centers;  // row-major, dim per bin
    std::vector<double> density;

    std::size_t size() const { return density.size(); }
};

// Bins are the half-open cells [k h, (k+1) h) per axis; only occupied bins are listed,
// in lexicographic order of their integer index.
inline LocalTimeEstimate local_time_histogram(const DiscreteMeasure& m, double h) {
    if (m.dim > 3) throw Error("local time histogram: dimension above 3");
    if (!(h > 0.0)) throw Error("local time histogram: bin width must be positive");
    std::map<std::vector<long long>, double> bins;
    std::vector<long long> key(static_cast<std::size_t>(m.dim));
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto p = m.point(i);
        for (int k = 0; k < m.dim; ++k) key[static_cast<std::size_t>(k)] = static_cast<long long>(std::floor(p[static_cast<std::size_t>(k)] / h));
        bins[key] += m.w[i];
    }
    LocalTimeEstimate out;
    out.dim = m.dim;
    out.bin_width = h;
    const double vol = std::pow(h, m.dim);
    for (const auto& [k, mass] : bins) {
        for (long long c : k) out.centers.push_back((static_cast<double>(c) + 0.5) * h);
        out.density.push_back(mass / vol);
    }
    return out;
}

// Local time of the piecewise-linear interpolant at level y: sum of dt / |slope| over
// crossing segments. A level equal to a sample value is shifted up by h * 1e-9, where
// h is the smallest nonzero increment.
inline double exact_local_time_pl(const SampledPath& path, double y) {
    if (path.dim != 1) throw Error("exact local time: one-dimensional paths only");
    if (path.interp != Interpolation::piecewise_linear) throw Error("exact local time: piecewise-linear paths only");
    double h = inf;
    bool tie = false;
    for (std::size_t i = 0; i < path.steps(); ++i) {
        const double a = path.x[i], b = path.x[i + 1];
        if (a == b && a == y) throw Error("exact local time: plateau at level");
        if (a != b) h = std::min(h, std::abs(b - a));
    }
    for (double v : path.x) tie = tie || v == y;
    if (!std::isfinite(h)) return 0.0;
    const double level = tie ? y + h * 1e-9 : y;
    double s = 0.0;
    for (std::size_t i = 0; i < path.steps(); ++i) {
        const double a = path.x[i], b = path.x[i + 1];
        if (std::min(a, b) < level && level < std::max(a, b)) s += path.dt / std::abs(b - a);
    }
    return s;
}

}  // namespace fracpath
