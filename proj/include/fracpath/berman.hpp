#pragma once

#include <complex>
#include <vector>

#include "core.hpp"
#include "detail/parallel.hpp"
#include "occupation.hpp"
#include "potential.hpp"

namespace fracpath {

// (2 pi)^{-n/2} sum w e^{-i xi . x}.
inline std::complex<double> measure_fourier(const DiscreteMeasure& m, std::span<const double> xi) {
    if (static_cast<int>(xi.size()) != m.dim) throw Error("measure fourier: frequency dimension mismatch");
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        double ph = 0.0;
        const auto x = m.point(i);
        for (int k = 0; k < m.dim; ++k) ph += xi[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(k)];
        re += m.w[i] * std::cos(ph);
        im -= m.w[i] * std::sin(ph);
    }
    return std::pow(2.0 * pi, -0.5 * m.dim) * std::complex<double>(re, im);
}

// Radial x angular quadrature nodes for integrals over R^n, n = 1, 2. Radial nodes are
// log-spaced on [xi_min, xi_knee] and uniform on [xi_knee, xi_max]; weights are trapezoid
// weights (in log r on the first piece). Directions cover a half sphere, the other half
// following from |mu^(-xi)| = |mu^(xi)|.
struct FourierGrid {
    int dim = 1;
    std::vector<double> radial_nodes, radial_weights, coarse_weights;
    std::vector<double> directions;  // dim entries per direction
    std::vector<double> angular_weights;
    double xi_min = 0.0, xi_knee = 0.0, xi_max = 0.0;
};

// Scale-free description: lengths in units of 1/diameter of the measure's support.
struct FourierGridSpec {
    std::size_t log_nodes = 48;
    double xi_min = 1e-3;
    double knee = 1.0;
    double nodes_per_unit = 8.0 / pi;  // uniform spacing pi / 8
    double reach = 256.0;
    std::size_t angles = 64;
};

inline FourierGrid make_fourier_grid(int dim, double diameter, const FourierGridSpec& s = {}) {
    if (dim < 1 || dim > 2) throw Error("Fourier grid: dimensions 1 and 2 only");
    if (!(diameter > 0.0)) throw Error("Fourier grid: diameter must be positive");
    FourierGrid g;
    g.dim = dim;
    g.xi_min = s.xi_min / diameter;
    g.xi_knee = s.knee / diameter;
    g.xi_max = s.reach / diameter;
    auto& r = g.radial_nodes;
    auto& w = g.radial_weights;
    auto& c = g.coarse_weights;
    const std::size_t L = std::max<std::size_t>(s.log_nodes, 3) | 1;  // odd so the coarse rule nests
    const double h = std::log(g.xi_knee / g.xi_min) / static_cast<double>(L - 1);
    for (std::size_t i = 0; i < L; ++i) {
        const double x = g.xi_min * std::exp(h * static_cast<double>(i));
        const double end = (i == 0 || i + 1 == L) ? 0.5 : 1.0;
        r.push_back(x);
        w.push_back(end * h * x);
        c.push_back(i % 2 == 0 ? ((i == 0 || i + 1 == L) ? 0.5 : 1.0) * 2.0 * h * x : 0.0);
    }
    auto U = static_cast<std::size_t>(std::ceil((g.xi_max - g.xi_knee) * diameter * s.nodes_per_unit));
    U += U % 2;
    const double du = (g.xi_max - g.xi_knee) / static_cast<double>(U);
    for (std::size_t i = 0; i <= U; ++i) {
        const double x = g.xi_knee + du * static_cast<double>(i);
        const double end = (i == 0 || i == U) ? 0.5 : 1.0;
        if (i == 0) {
            w.back() += end * du;
            c.back() += 2.0 * end * du;
            continue;
        }
        r.push_back(x);
        w.push_back(end * du);
        c.push_back(i % 2 == 0 ? end * 2.0 * du : 0.0);
    }
    if (dim == 1) {
        g.directions = {1.0};
        g.angular_weights = {2.0};
    } else {
        const std::size_t M = std::max<std::size_t>(s.angles, 4);
        for (std::size_t j = 0; j < M; ++j) {
            const double th = pi * static_cast<double>(j) / static_cast<double>(M);
            g.directions.push_back(std::cos(th));
            g.directions.push_back(std::sin(th));
            g.angular_weights.push_back(2.0 * pi / static_cast<double>(M));
        }
    }
    return g;
}

namespace detail {

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace detail

// || |xi|^alpha mu^ ||_{L^p(R^n)}. Atoms of a diffuse measure stand for cubes of side
// cell_width, so mu^ carries the factor prod sinc(xi_k h / 2). Below xi_min |mu^| is taken
// as its value at 0; resolution["tail_bound"] bounds the part beyond xi_max (may be inf).
// Trivial ranges (p < inf, alpha <= -n/p; p = inf, alpha < 0) and point masses with
// p < inf give +inf.
inline EstimateReport fourier_weighted_norm(const DiscreteMeasure& m, double alpha, double p, const FourierGrid& g) {
    const int n = m.dim;
    if (g.dim != n) throw Error("Fourier norm: grid dimension mismatch");
    if (!(p >= 1.0)) throw Error("Fourier norm: need p >= 1");
    EstimateReport r;
    r.resolution["xi_min"] = g.xi_min;
    r.resolution["xi_max"] = g.xi_max;
    const double mass = m.mass();
    const auto sentinel = [&](const char* why) {
        r.value = r.raw = inf;
        r.verdict = Verdict::divergent;
        r.note = why;
        return r;
    };
    if (m.size() == 0 || mass == 0.0) {
        r.value = r.raw = 0.0;
        r.refinement_delta = 0.0;
        r.verdict = Verdict::finite;
        return r;
    }
    if (std::isinf(p) && alpha < 0.0) return sentinel("trivial range: p = inf, alpha < 0");
    if (!std::isinf(p) && alpha <= -n / p) return sentinel("trivial range: alpha <= -n/p");
    if (!std::isinf(p) && m.point_masses) return sentinel("point mass: |mu^| does not decay");
    const double h = m.point_masses ? 0.0 : m.cell_width;
    const std::size_t R = g.radial_nodes.size(), D = g.angular_weights.size();
    std::vector<double> mod(R * D);
    parallel_for(R * D, [&](std::size_t idx) {
        const std::size_t i = idx / D, j = idx % D;
        double xi[2];
        double damp = 1.0;
        for (int k = 0; k < n; ++k) {
            xi[k] = g.radial_nodes[i] * g.directions[j * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)];
            damp *= detail::sinc(0.5 * xi[k] * h);
        }
        mod[idx] = std::abs(measure_fourier(m, std::span<const double>(xi, static_cast<std::size_t>(n)))) * std::abs(damp);
    }, 8);
    const double zero = std::pow(2.0 * pi, -0.5 * n) * mass;
    if (std::isinf(p)) {
        double best = alpha == 0.0 ? zero : 0.0;
        for (std::size_t i = 0; i < R; ++i)
            for (std::size_t j = 0; j < D; ++j) best = std::max(best, std::pow(g.radial_nodes[i], alpha) * mod[i * D + j]);
        r.value = r.raw = best;
        r.verdict = Verdict::finite;
        r.note = "grid maximum";
        return r;
    }
    const double e = alpha * p + n;  // radial exponent + 1
    double fine = 0.0, coarse = 0.0;
    for (std::size_t i = 0; i < R; ++i) {
        double ang = 0.0;
        for (std::size_t j = 0; j < D; ++j) ang += g.angular_weights[j] * std::pow(mod[i * D + j], p);
        const double radial = std::pow(g.radial_nodes[i], e - 1.0) * ang;
        fine += g.radial_weights[i] * radial;
        coarse += g.coarse_weights[i] * radial;
    }
    const double sphere = n == 1 ? 2.0 : 2.0 * pi;
    const double small = sphere * std::pow(zero, p) * std::pow(g.xi_min, e) / e;
    fine += small;
    coarse += small;
    double tail = inf;
    if (h > 0.0 && e - p < 0.0) {
        const double c = std::pow(zero * 2.0 * std::sqrt(static_cast<double>(n)) / h, p);
        tail = sphere * c * std::pow(g.xi_max, e - p) / (p - e);
    }
    r.resolution["tail_bound"] = tail;
    r.raw = std::pow(fine, 1.0 / p);
    r.value = r.raw;
    r.ladder = {std::pow(coarse, 1.0 / p), r.raw};
    r.refinement_delta = std::abs(r.ladder[1] - r.ladder[0]);
    r.resolution["upper"] = std::isfinite(tail) ? std::pow(fine + tail, 1.0 / p) : inf;
    r.verdict = Verdict::finite;
    return r;
}

namespace detail {

inline void check_window(const SampledPath& path, TimeWindow w) {
    if (!(w.end > w.start)) throw Error("degenerate window");
    (void)restrict(path, w);
}

inline double image_diameter(const SampledPath& path, TimeWindow w) { return path_diameter(restrict(path, w)); }

}  // namespace detail

// diam(X(J))^{alpha + n/p} || |xi|^alpha mu_X^J^ ||_{L^p} / L^1(J): the empirical constant
// of the Berman inequality on this window. The Fourier grid is scaled to the image diameter.
inline EstimateReport berman_ratio(const SampledPath& path, TimeWindow w, double alpha, double p,
                                   const FourierGridSpec& spec = {}) {
    detail::check_window(path, w);
    const DiscreteMeasure mu = occupation_measure(path, w);
    const double diam = detail::image_diameter(path, w);
    if (!(diam > 0.0)) throw Error("degenerate window: image is a single point");
    const double length = w.end - w.start;
    const FourierGrid g = make_fourier_grid(path.dim, diam, spec);
    EstimateReport norm = fourier_weighted_norm(mu, alpha, p, g);
    const double np = std::isinf(p) ? 0.0 : path.dim / p;
    const double factor = std::pow(diam, alpha + np) / length;
    EstimateReport r = norm;
    r.raw = norm.raw * factor;
    r.value = norm.value * factor;
    for (double& v : r.ladder) v *= factor;
    if (std::isfinite(norm.refinement_delta)) r.refinement_delta = norm.refinement_delta * factor;
    r.resolution["diameter"] = diam;
    r.resolution["length"] = length;
    r.resolution["fourier_norm"] = norm.raw;
    return r;
}

struct TauSigma {
    double tau = 0.0;
    double sigma = 0.0;
    EstimateReport fourier, energy;
};

// tau = L^1(J) / || |xi|^alpha mu^ ||_{L^p}; sigma = L^1(J) / ||mu||_{L^{p'}_alpha}. sigma
// is NaN outside 1 < p < inf, -n/p < alpha < 0.
inline TauSigma tau_sigma(const SampledPath& path, TimeWindow w, double p, double alpha,
                          const FourierGridSpec& spec = {}) {
    if (!(p > 1.0)) throw Error("tau: need 1 < p <= inf");
    detail::check_window(path, w);
    const DiscreteMeasure mu = occupation_measure(path, w);
    const double length = w.end - w.start;
    const double diam = std::max(detail::image_diameter(path, w), mu.cell_width);
    TauSigma t;
    t.fourier = fourier_weighted_norm(mu, alpha, p, make_fourier_grid(path.dim, diam, spec));
    t.tau = std::isinf(t.fourier.raw) ? 0.0 : length / t.fourier.raw;
    const int n = path.dim;
    if (!std::isinf(p) && alpha < 0.0 && alpha > -n / p) {
        t.energy = negative_sobolev_norm(mu, alpha, conjugate_exponent(p));
        t.sigma = std::isinf(t.energy.raw) ? 0.0 : length / t.energy.raw;
    } else {
        t.sigma = std::numeric_limits<double>::quiet_NaN();
    }
    return t;
}

namespace detail {

inline double increment_power(const SampledPath& x, std::size_t i, std::size_t j, double p) {
    return std::pow(distance(x.point(i), x.point(j)), p);
}

// Partition with steps of k - 1 samples, then one pass moving each interior breakpoint by
// one sample when that increases the sum and keeps every step within k samples.
inline double variation_sum(const SampledPath& x, double p, std::size_t k) {
    const std::size_t n = x.steps();
    std::vector<std::size_t> b{0};
    for (std::size_t i = k - 1; i < n; i += k - 1) b.push_back(i);
    if (b.back() != n) b.push_back(n);
    for (std::size_t j = 1; j + 1 < b.size(); ++j) {
        const std::size_t l = b[j - 1], r = b[j + 1];
        double best = increment_power(x, l, b[j], p) + increment_power(x, b[j], r, p);
        std::size_t pick = b[j];
        for (std::size_t c : {b[j] - 1, b[j] + 1}) {
            if (c <= l || c >= r || c - l > k || r - c > k) continue;
            const double v = increment_power(x, l, c, p) + increment_power(x, c, r, p);
            if (v > best) {
                best = v;
                pick = c;
            }
        }
        b[j] = pick;
    }
    double s = 0.0;
    for (std::size_t j = 1; j < b.size(); ++j) s += increment_power(x, b[j - 1], b[j], p);
    return s;
}

}  // namespace detail

// Approximate sup of sum |X(t_i) - X(t_{i-1})|^p over partitions of mesh <= each mesh.
// Meshes (in time units, decreasing) must be multiples of dt and at least 2 dt.
inline EstimateReport limiting_variation(const SampledPath& path, double p_var, const std::vector<double>& meshes) {
    if (!(p_var > 0.0)) throw Error("limiting variation: need p > 0");
    if (meshes.empty()) throw Error("limiting variation: empty mesh sequence");
    std::vector<double> ladder;
    for (double m : meshes) {
        const double r = m / path.dt;
        const auto k = static_cast<std::size_t>(std::llround(r));
        if (k < 2 || std::abs(r - static_cast<double>(k)) > 1e-9) throw Error("limiting variation: mesh must be a multiple of dt, at least 2 dt");
        ladder.push_back(detail::variation_sum(path, p_var, k));
    }
    EstimateReport r = report_from_ladder(ladder);
    r.resolution["finest_mesh"] = meshes.back();
    r.note = r.diverged() ? "infinite" : "finite";
    return r;
}

struct PackedInterval {
    double start = 0.0, end = 0.0, tau = 0.0;
};

struct PackingResult {
    EstimateReport report;  // value is the greedy sum, a lower bound for the sup
    std::vector<PackedInterval> family;
    bool lower_bound = true;
};

// Greedy lower bound for sup sum tau_{p,alpha}(X, I_k)^q over disjoint closed intervals
// centred in E with length <= delta. Candidates: grid centres in E (at most max_centers per
// window, evenly strided) and lengths delta, delta/2, ... down to 4 dt, rounded to even
// multiples of dt; picked in decreasing order of tau^q / length.
inline PackingResult packing_prefunctional(const SampledPath& path, const std::vector<TimeWindow>& E, double p,
                                           double alpha, double q, double delta, const FourierGridSpec& spec = {},
                                           std::size_t max_centers = 64) {
    PackingResult out;
    out.report.verdict = Verdict::finite;
    out.report.resolution["delta"] = delta;
    if (E.empty()) return out;
    if (delta < 4.0 * path.dt - 1e-12) throw Error("packing: need delta >= 4 dt");
    std::vector<std::size_t> lengths;  // in samples, even
    for (auto L = static_cast<std::size_t>(std::floor(delta / path.dt + 1e-9)); L >= 4; L /= 2) lengths.push_back(L - L % 2);
    std::vector<std::size_t> centers;
    const double T = path.horizon();
    for (const auto& w : E) {
        const auto a = static_cast<std::size_t>(std::ceil((w.start - path.t0) / path.dt - 1e-9));
        const auto b = static_cast<std::size_t>(std::floor((w.end - path.t0) / path.dt + 1e-9));
        if (b < a) continue;
        const std::size_t stride = std::max<std::size_t>(1, (b - a + 1 + max_centers - 1) / max_centers);
        for (std::size_t c = a; c <= b; c += stride) centers.push_back(c);
    }
    struct Candidate {
        std::size_t lo, hi;
        double tau, score;
    };
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (std::size_t c : centers)
        for (std::size_t L : lengths) {
            if (c < L / 2 || c + L / 2 > path.steps()) continue;
            spans.emplace_back(c - L / 2, c + L / 2);
        }
    std::vector<Candidate> cand(spans.size());
    parallel_for(spans.size(), [&](std::size_t i) {
        const auto [lo, hi] = spans[i];
        const TimeWindow w{path.time(lo), path.time(hi)};
        const DiscreteMeasure mu = occupation_measure(path, w);
        const double diam = std::max(detail::image_diameter(path, w), mu.cell_width);
        const EstimateReport f = fourier_weighted_norm(mu, alpha, p, make_fourier_grid(path.dim, diam, spec));
        const double tau = std::isinf(f.raw) ? 0.0 : (w.end - w.start) / f.raw;
        cand[i] = {lo, hi, tau, std::pow(tau, q) / (w.end - w.start)};
    }, 1);
    std::vector<std::size_t> order(cand.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cand[a].score > cand[b].score; });
    std::vector<std::pair<std::size_t, std::size_t>> taken;
    double sum = 0.0;
    for (std::size_t i : order) {
        const auto& c = cand[i];
        if (c.tau <= 0.0) continue;
        bool free = true;
        for (const auto& [lo, hi] : taken) free = free && (c.hi < lo || c.lo > hi);
        if (!free) continue;
        taken.emplace_back(c.lo, c.hi);
        out.family.push_back({path.time(c.lo), path.time(c.hi), c.tau});
        sum += std::pow(c.tau, q);
    }
    std::sort(out.family.begin(), out.family.end(), [](const auto& a, const auto& b) { return a.start < b.start; });
    out.report.value = out.report.raw = sum;
    out.report.resolution["intervals"] = static_cast<double>(out.family.size());
    out.report.resolution["horizon"] = T;
    out.report.note = "greedy lower bound";
    return out;
}

// Finite-delta occupation index: n/2 plus the alpha at which P_{2,alpha,q;delta} first
// crosses the threshold along alpha_grid (either direction).
inline EstimateReport occupation_index(const SampledPath& path, const std::vector<TimeWindow>& E, double q,
                                       std::vector<double> alpha_grid, double delta, double threshold,
                                       const FourierGridSpec& spec = {}, std::size_t max_centers = 32) {
    const double half = 0.5 * path.dim;
    if (alpha_grid.size() < 8) throw Error("occupation index: need at least 8 alpha nodes");
    std::sort(alpha_grid.begin(), alpha_grid.end());
    for (double a : alpha_grid)
        if (!(a > -half && a < 0.0)) throw Error("occupation index: alpha nodes must lie in (-n/2, 0)");
    std::vector<double> P;
    for (double a : alpha_grid) P.push_back(packing_prefunctional(path, E, 2.0, a, q, delta, spec, max_centers).report.raw);
    EstimateReport r;
    r.ladder = P;
    r.resolution["threshold"] = threshold;
    r.resolution["delta"] = delta;
    r.resolution["finite_delta_estimate"] = 1.0;
    for (std::size_t i = 1; i < P.size(); ++i) {
        const bool below0 = P[i - 1] <= threshold, below1 = P[i] <= threshold;
        if (below0 == below1) continue;
        const double t = (threshold - P[i - 1]) / (P[i] - P[i - 1]);
        const double a = alpha_grid[i - 1] + t * (alpha_grid[i] - alpha_grid[i - 1]);
        r.value = r.raw = a + half;
        r.verdict = Verdict::finite;
        r.note = "finite-delta estimate";
        return r;
    }
    const bool all_below = P.front() <= threshold;
    r.value = r.raw = (all_below ? alpha_grid.back() : alpha_grid.front()) + half;
    r.verdict = Verdict::not_assessed;
    r.note = all_below ? "index outside tested range (>= max tested alpha + n/2)"
                       : "index outside tested range (<= min tested alpha + n/2)";
    return r;
}

}  // namespace fracpath
