#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include "core.hpp"
#include "rng.hpp"

namespace fracpath {

struct GeneratorConfig {
    std::string family = "fbm";
    int dim = 1;
    double T = 1.0;
    std::size_t N = 1024;
    double hurst = 0.5;
    double stable_alpha = 2.0;
    // linear: X_t = slope * t * direction
    double slope = 1.0;
    std::vector<double> direction;
    // constant
    std::vector<double> value;
    // step: X_t = sum_k heights[k] * 1_[breakpoints[k], T)(t)
    std::vector<double> breakpoints;
    std::vector<double> heights;
    // piecewise_linear: knots, clamped outside the knot range
    std::vector<double> knot_times;
    std::vector<double> knot_values;
    // weierstrass: sum over b^k <= cutoff of a^k cos(pi b^k t)
    double weier_a = 0.5;
    double weier_b = 3.0;
    double weier_cutoff = 1e4;
};

inline std::vector<double> fgn_autocovariance(double H, std::size_t m) {
    std::vector<double> g(m + 1);
    const double h2 = 2.0 * H;
    for (std::size_t k = 0; k <= m; ++k) {
        const double kk = static_cast<double>(k);
        g[k] = 0.5 * (std::pow(kk + 1.0, h2) - 2.0 * std::pow(kk, h2) + std::pow(std::abs(kk - 1.0), h2));
    }
    return g;
}

// Eigenvalues of the 2N circulant embedding of the unit-step fGn covariance.
inline std::vector<double> davies_harte_eigenvalues(double H, std::size_t N) {
    const std::size_t M = 2 * N;
    const auto g = fgn_autocovariance(H, N);
    std::vector<std::complex<double>> row(M), spec;
    for (std::size_t k = 0; k <= N; ++k) row[k] = g[k];
    for (std::size_t k = N + 1; k < M; ++k) row[k] = g[M - k];
    Eigen::FFT<double> fft;
    fft.fwd(spec, row);
    std::vector<double> lam(M);
    for (std::size_t k = 0; k < M; ++k) lam[k] = spec[k].real();
    return lam;
}

// N unit-step fGn increments; returns false when the embedding is not nonnegative.
inline bool fgn_davies_harte(double H, std::size_t N, CounterRng& rng, std::vector<double>& out) {
    const std::size_t M = 2 * N;
    auto lam = davies_harte_eigenvalues(H, N);
    double top = 0.0;
    for (double l : lam) top = std::max(top, l);
    for (double& l : lam) {
        if (l < -1e-10 * top) return false;
        l = std::max(l, 0.0);
    }
    std::vector<std::complex<double>> a(M), y;
    for (std::size_t k = 0; k < M; ++k) {
        const double s = std::sqrt(lam[k] / static_cast<double>(M));
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        a[k] = {s * z1, s * z2};
    }
    Eigen::FFT<double> fft;
    fft.fwd(y, a);
    out.resize(N);
    for (std::size_t j = 0; j < N; ++j) out[j] = y[j].real();
    return true;
}

inline std::vector<double> fgn_cholesky(double H, std::size_t N, CounterRng& rng) {
    if (N > 1024) throw Error("Cholesky fBm fallback limited to N <= 2^10");
    const auto g = fgn_autocovariance(H, N);
    Eigen::MatrixXd C(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g[i > j ? i - j : j - i];
    Eigen::LLT<Eigen::MatrixXd> llt(C);
    if (llt.info() != Eigen::Success) throw Error("fGn covariance is not positive definite");
    Eigen::VectorXd z(static_cast<Eigen::Index>(N));
    for (std::size_t i = 0; i < N; ++i) z(static_cast<Eigen::Index>(i)) = rng.normal();
    Eigen::VectorXd y = llt.matrixL() * z;
    return std::vector<double>(y.data(), y.data() + y.size());
}

// Symmetric alpha-stable variate with characteristic function exp(-|u|^alpha / 2)
// (Chambers-Mallows-Stuck); alpha = 2 gives N(0, 1).
inline double symmetric_stable(double alpha, CounterRng& rng) {
    const double V = pi * (rng.uniform() - 0.5);
    const double W = rng.exponential();
    const double scale = std::pow(0.5, 1.0 / alpha);
    if (std::abs(alpha - 1.0) < 1e-12) return scale * std::tan(V);
    const double s = std::sin(alpha * V) / std::pow(std::cos(V), 1.0 / alpha);
    const double r = std::pow(std::cos(V - alpha * V) / W, (1.0 - alpha) / alpha);
    return scale * s * r;
}

namespace detail {

inline void validate_generator(const GeneratorConfig& c) {
    if (!(c.T > 0.0) || !std::isfinite(c.T)) throw Error("generator: T must be positive");
    if (c.N < 1) throw Error("generator: N must be >= 1");
    if (c.dim < 1) throw Error("generator: dim must be >= 1");
}

inline SampledPath deterministic_path(const GeneratorConfig& c) {
    const std::size_t m = c.N + 1;
    const double dt = c.T / static_cast<double>(c.N);
    auto t_of = [&](std::size_t i) { return i == c.N ? c.T : dt * static_cast<double>(i); };
    std::vector<double> v;
    int dim = 1;
    Interpolation interp = Interpolation::piecewise_linear;
    if (c.family == "linear") {
        std::vector<double> dir = c.direction.empty() ? std::vector<double>{1.0} : c.direction;
        dim = static_cast<int>(dir.size());
        for (std::size_t i = 0; i < m; ++i)
            for (double d : dir) v.push_back(c.slope * t_of(i) * d);
    } else if (c.family == "constant") {
        std::vector<double> val = c.value.empty() ? std::vector<double>{0.0} : c.value;
        dim = static_cast<int>(val.size());
        for (std::size_t i = 0; i < m; ++i) v.insert(v.end(), val.begin(), val.end());
    } else if (c.family == "tent") {
        for (std::size_t i = 0; i < m; ++i) v.push_back(std::abs(2.0 * t_of(i) / c.T - 1.0));
    } else if (c.family == "step") {
        interp = Interpolation::cadlag;
        if (!c.heights.empty() && c.heights.size() != c.breakpoints.size())
            throw Error("generator: step heights must match breakpoints");
        for (std::size_t i = 0; i < m; ++i) {
            const double t = t_of(i);
            double s = 0.0;
            for (std::size_t k = 0; k < c.breakpoints.size(); ++k)
                if (t >= c.breakpoints[k] && t < c.T) s += c.heights.empty() ? 1.0 : c.heights[k];
            v.push_back(s);
        }
    } else if (c.family == "piecewise_linear") {
        if (c.knot_times.size() < 2 || c.knot_times.size() != c.knot_values.size())
            throw Error("generator: piecewise_linear needs >= 2 matching knots");
        if (!std::is_sorted(c.knot_times.begin(), c.knot_times.end()))
            throw Error("generator: knot times must be increasing");
        for (std::size_t i = 0; i < m; ++i) {
            const double t = t_of(i);
            if (t <= c.knot_times.front()) {
                v.push_back(c.knot_values.front());
                continue;
            }
            if (t >= c.knot_times.back()) {
                v.push_back(c.knot_values.back());
                continue;
            }
            const auto it = std::upper_bound(c.knot_times.begin(), c.knot_times.end(), t);
            const std::size_t k = static_cast<std::size_t>(it - c.knot_times.begin());
            const double t0 = c.knot_times[k - 1], t1 = c.knot_times[k];
            const double u = (t - t0) / (t1 - t0);
            v.push_back((1.0 - u) * c.knot_values[k - 1] + u * c.knot_values[k]);
        }
    } else if (c.family == "weierstrass") {
        if (!(c.weier_a > 0.0 && c.weier_a < 1.0) || !(c.weier_b > 1.0))
            throw Error("generator: weierstrass needs 0 < a < 1 < b");
        for (std::size_t i = 0; i < m; ++i) {
            const double t = t_of(i);
            double s = 0.0, amp = 1.0, freq = 1.0;
            while (freq <= c.weier_cutoff) {
                s += amp * std::cos(pi * freq * t);
                amp *= c.weier_a;
                freq *= c.weier_b;
            }
            v.push_back(s);
        }
    } else {
        throw Error("generator: unknown family '" + c.family + "'");
    }
    return make_path(dim, c.T, interp, std::move(v));
}

}  // namespace detail

// fbm and stable_levy draw coordinate k from stream k of the seed.
inline SampledPath generate_path(const GeneratorConfig& c, std::uint64_t seed) {
    detail::validate_generator(c);
    if (c.family != "fbm" && c.family != "stable_levy") return detail::deterministic_path(c);
    const std::size_t N = c.N;
    const double dt = c.T / static_cast<double>(N);
    std::vector<double> v((N + 1) * static_cast<std::size_t>(c.dim), 0.0);
    Interpolation interp = Interpolation::piecewise_linear;
    if (c.family == "fbm") {
        if (!(c.hurst > 0.0 && c.hurst < 1.0)) throw Error("generator: hurst must lie in (0, 1)");
        const double scale = std::pow(dt, c.hurst);
        for (int k = 0; k < c.dim; ++k) {
            CounterRng rng(seed, static_cast<std::uint64_t>(k));
            std::vector<double> inc;
            if (!fgn_davies_harte(c.hurst, N, rng, inc)) {
                if (N > 1024) throw Error("generator: circulant embedding failed and N > 2^10");
                inc = fgn_cholesky(c.hurst, N, rng);
            }
            double s = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                s += scale * inc[i];
                v[(i + 1) * static_cast<std::size_t>(c.dim) + static_cast<std::size_t>(k)] = s;
            }
        }
    } else {
        if (!(c.stable_alpha > 0.0 && c.stable_alpha <= 2.0)) throw Error("generator: stable alpha must lie in (0, 2]");
        interp = Interpolation::cadlag;
        const double scale = std::pow(dt, 1.0 / c.stable_alpha);
        for (int k = 0; k < c.dim; ++k) {
            CounterRng rng(seed, static_cast<std::uint64_t>(k));
            double s = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                s += scale * symmetric_stable(c.stable_alpha, rng);
                v[(i + 1) * static_cast<std::size_t>(c.dim) + static_cast<std::size_t>(k)] = s;
            }
        }
    }
    return make_path(c.dim, c.T, interp, std::move(v));
}

// Dyadic lags 1, 2, ..., up to 64 and at most N/4. Short lags keep the log factor of
// the running maximum from biasing the slope.
inline std::vector<std::size_t> dyadic_lags(std::size_t N) {
    std::vector<std::size_t> lags;
    for (std::size_t k = 1; k <= 64 && 4 * k <= N; k *= 2) lags.push_back(k);
    if (lags.size() < 2) lags = {1, 2};
    return lags;
}

// Least-squares slope of log(max_i |X_{i+k} - X_i|) against log(k dt).
inline double empirical_holder_exponent(const SampledPath& path, std::vector<std::size_t> lags = {}) {
    if (lags.empty()) lags = dyadic_lags(path.steps());
    std::vector<double> lx, ly;
    for (std::size_t k : lags) {
        if (k == 0 || k > path.steps()) throw Error("holder: lag outside path");
        double best = 0.0;
        for (std::size_t i = 0; i + k < path.size(); ++i) best = std::max(best, distance(path.point(i), path.point(i + k)));
        if (best > 0.0) {
            lx.push_back(std::log(static_cast<double>(k) * path.dt));
            ly.push_back(std::log(best));
        }
    }
    if (lx.size() < 2) throw Error("holder: constant path has no exponent estimate");
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace fracpath
