#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <numeric>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "berman.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "fracint.hpp"
#include "occupation.hpp"
#include "pathgen.hpp"
#include "potential.hpp"
#include "reference.hpp"
#include "seminorm.hpp"
#include "varcomp.hpp"

namespace fracpath {

inline constexpr const char* code_version = "fracpath 1.0.0";

struct Quantity {
    std::string name;
    EstimateReport report;
};

namespace detail {

inline EstimateReport scalar_report(double v, const std::string& note = {}) {
    EstimateReport r;
    r.value = r.raw = v;
    r.verdict = std::isfinite(v) ? Verdict::finite : Verdict::divergent;
    r.note = note;
    return r;
}

inline std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_double(v[i]);
    return s;
}

inline std::string join(const std::map<std::string, double>& m) {
    std::string s;
    for (const auto& [k, v] : m) s += (s.empty() ? "" : ";") + k + "=" + format_double(v);
    return s;
}

// Window starts shared by every refinement: uniform on the coarsest grid.
inline std::vector<TimeWindow> random_windows(const ExperimentConfig& c, std::uint64_t seed) {
    const auto& g = c.generator;
    const std::size_t count = static_cast<std::size_t>(c.param("windows", 100));
    const double length = c.param("window_length", g.T / 8.0);
    const std::size_t coarse_steps = g.N >> (c.refinements - 1);
    const double coarse_dt = g.T / static_cast<double>(coarse_steps);
    const auto span = static_cast<std::size_t>(std::llround(length / coarse_dt));
    if (span < 2 || span > coarse_steps) throw ConfigError("params.window_length must cover 2 to N coarse steps");
    CounterRng rng(seed, 0x57A7);
    std::vector<TimeWindow> w;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t start = rng.below(coarse_steps - span + 1);
        w.push_back({static_cast<double>(start) * coarse_dt, static_cast<double>(start + span) * coarse_dt});
    }
    return w;
}

struct LevelOutput {
    std::vector<Quantity> quantities;
    std::vector<std::pair<double, double>> plot;  // log-log pairs, experiment specific
};

inline LevelOutput run_level(const ExperimentConfig& c, const SampledPath& X, std::uint64_t seed, bool finest,
                             const std::filesystem::path& out, const std::string& tag) {
    LevelOutput o;
    auto add = [&](const std::string& n, EstimateReport r) { o.quantities.push_back({n, std::move(r)}); };
    const std::string& x = c.experiment;
    if (x == "occupation") {
        const DiscreteMeasure mu = occupation_measure(X);
        const double d = support_diameter(mu);
        add("mass", scalar_report(mu.mass()));
        add("diameter", scalar_report(d));
        if (d > 0.0) {
            const auto radii = log_grid(1e-3 * d, 3e-2 * d, 8);
            add("slope", scalar_report(upper_regularity_exponent(mu, atom_centers(mu, mu.dim == 1 ? 64 : 256), radii)));
            const BallCounter bc(mu);
            const auto centers = atom_centers(mu, mu.dim == 1 ? 64 : 256);
            for (double r : radii) {
                double best = 0.0;
                for (const auto& ctr : centers) best = std::max(best, bc.mass(ctr, r));
                if (best > 0.0) o.plot.emplace_back(r, best);
            }
        } else {
            add("slope", scalar_report(std::numeric_limits<double>::quiet_NaN(), "support is a single point"));
        }
    } else if (x == "potential") {
        const DiscreteMeasure mu = occupation_measure(X);
        const double gm = c.need("gamma"), q = c.need("q");
        EstimateReport e = energy(mu, gm, q);
        add("energy", e);
        add("negative_sobolev_norm", negative_sobolev_norm(mu, -gm, q));
        o.plot.emplace_back(X.dt, e.raw);
    } else if (x == "variability") {
        const VariabilityProfile prof = variability_profile(*c.bv, X, c.need("s"), c.bv_resolution);
        EstimateReport n = variability_norm(prof, c.need("p"));
        add("variability_norm", n);
        add("singular_hits", scalar_report(static_cast<double>(prof.singular_hits.size())));
        o.plot.emplace_back(X.dt, n.raw);
        if (finest) {
            std::ofstream f(out / ("profile_" + tag + ".csv"));
            std::vector<bool> flags(prof.values.size(), false);
            for (std::size_t i : prof.singular_hits) flags[i] = true;
            write_profile_csv(f, prof.times, prof.values, flags);
        }
    } else if (x == "compose") {
        const Composition comp = compose(*c.bv, X);
        add("singular_fraction", scalar_report(comp.singular_fraction));
        add("time_on_singular_set", scalar_report(comp.time_on_singular_set));
        add("ill_posed", scalar_report(comp.ill_posed ? 1.0 : 0.0));
        o.plot.emplace_back(X.dt, comp.singular_fraction);
        if (finest) {
            std::ofstream f(out / ("composition_" + tag + ".csv"));
            std::vector<double> t(comp.path.size());
            for (std::size_t i = 0; i < t.size(); ++i) t[i] = comp.path.time(i);
            write_profile_csv(f, t, comp.path.x, comp.flags);
        }
    } else if (x == "seminorm") {
        EstimateReport r = gagliardo_seminorm(X, {c.need("theta"), c.need("p"), 0.0}, seed);
        add("seminorm", r);
        add("holder_exponent", scalar_report(X.steps() >= 8 ? empirical_holder_exponent(X) : std::numeric_limits<double>::quiet_NaN()));
        o.plot.emplace_back(X.dt, r.raw);
    } else if (x == "key_estimate") {
        const KeyEstimate k = key_estimate_report(*c.bv, X, c.need("s"), c.need("theta"), c.need("p"), c.need("q"),
                                                  c.need("beta"), c.need("r"), c.bv_resolution, seed);
        add("lhs", k.lhs);
        add("path_seminorm", k.path_norm);
        add("variability_norm", k.variability);
        add("rhs_product", scalar_report(k.rhs_product));
        add("ratio", scalar_report(k.ratio));
        o.plot.emplace_back(X.dt, k.ratio);
    } else if (x == "integrate") {
        const SampledPath f = c.bv ? compose(*c.bv, X).path : X;
        EstimateReport z = zahle_integral(f, X, c.need("alpha"));
        add("zahle", z);
        std::vector<std::size_t> all(X.size());
        std::iota(all.begin(), all.end(), 0);
        add("forward_sum", scalar_report(stieltjes_forward_sum(f, X, all)));
        o.plot.emplace_back(X.dt, z.raw);
    } else if (x == "berman") {
        const double a = c.need("alpha"), p = c.need("p");
        std::vector<double> ks;
        std::unique_ptr<std::ofstream> f;
        std::unique_ptr<CsvWriter> w;
        if (finest) {
            f = std::make_unique<std::ofstream>(out / ("windows_" + tag + ".csv"));
            w = std::make_unique<CsvWriter>(*f, std::initializer_list<std::string>{"t_start", "t_end", "tau", "sigma", "empirical_K"});
        }
        for (const auto& win : random_windows(c, seed)) {
            const EstimateReport k = berman_ratio(X, win, a, p);
            ks.push_back(k.raw);
            if (w) {
                const TauSigma ts = tau_sigma(X, win, p, a);
                w->write_row(row(win.start, win.end, ts.tau, ts.sigma, k.raw));
            }
        }
        std::vector<double> sorted = ks;
        std::sort(sorted.begin(), sorted.end());
        add("min_K", scalar_report(sorted.front()));
        add("median_K", scalar_report(sorted[sorted.size() / 2]));
        add("max_K", scalar_report(sorted.back()));
        o.plot.emplace_back(X.dt, sorted.front());
    }
    return o;
}

}  // namespace detail

struct CheckResult {
    bool pass = false;
    double value = 0.0;
    double bound = 0.0;
};

struct Check {
    std::string id;
    std::function<CheckResult(std::uint64_t seed, const std::map<std::string, double>& oracles)> run;
};

struct CheckRow {
    std::string id, status;
    double value = 0.0, bound = 0.0, runtime = 0.0;
};

namespace detail {

inline CheckResult at_most(double v, double bound) { return {v <= bound, v, bound}; }
inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline SampledPath linear_path(std::size_t N) {
    GeneratorConfig g;
    g.family = "linear";
    g.N = N;
    return generate_path(g, 0);
}

inline SampledPath fbm_path(double H, std::size_t N, std::uint64_t seed) {
    GeneratorConfig g;
    g.family = "fbm";
    g.hurst = H;
    g.N = N;
    return generate_path(g, seed);
}

inline SampledPath from_values(std::vector<double> v) {
    return make_path(1, 1.0, Interpolation::piecewise_linear, std::move(v));
}

inline double oracle(const std::map<std::string, double>& o, const std::string& k) {
    const auto it = o.find(k);
    if (it == o.end()) throw Error("oracle file lacks " + k);
    return it->second;
}

inline std::vector<double> smooth_values(std::size_t N, double (*f)(double)) {
    std::vector<double> v(N + 1);
    for (std::size_t i = 0; i <= N; ++i) v[i] = f(static_cast<double>(i) / static_cast<double>(N));
    return v;
}

}  // namespace detail

// Named checks: trivial_* (definitions), oracle_* (pinned values), invariant_* (properties).
// value is the measured error or statistic, bound its tolerance; pass iff value <= bound.
inline std::vector<Check> verify_checks() {
    using namespace detail;
    using O = std::map<std::string, double>;
    std::vector<Check> c;
    c.push_back({"trivial_linear_samples", [](std::uint64_t, const O&) {
        const auto X = linear_path(4);
        double e = 0.0;
        for (std::size_t i = 0; i < 5; ++i) e = std::max(e, std::abs(X.x[i] - 0.25 * static_cast<double>(i)));
        return at_most(e, 0.0);
    }});
    c.push_back({"trivial_occupation_mass", [](std::uint64_t seed, const O&) {
        return at_most(std::abs(occupation_measure(fbm_path(0.5, 1024, seed)).mass() - 1.0), 1e-12);
    }});
    c.push_back({"trivial_fourier_at_zero", [](std::uint64_t, const O&) {
        const auto mu = occupation_measure(linear_path(256));
        const double z = 0.0;
        return at_most(std::abs(std::abs(measure_fourier(mu, {&z, 1})) - std::pow(2.0 * pi, -0.5)), 1e-12);
    }});
    c.push_back({"trivial_constant_compose", [](std::uint64_t seed, const O&) {
        const auto comp = compose(constant_function(2.5), fbm_path(0.5, 512, seed));
        double e = 0.0;
        for (double v : comp.path.x) e = std::max(e, std::abs(v - 2.5));
        return at_most(e, 0.0);
    }});
    c.push_back({"trivial_zero_profile_norm", [](std::uint64_t seed, const O&) {
        const auto prof = variability_profile(constant_function(1.0), fbm_path(0.5, 512, seed), 0.5, 1e-3);
        return at_most(variability_norm(prof, 2.0).raw, 0.0);
    }});
    c.push_back({"trivial_gagliardo_constant", [](std::uint64_t, const O&) {
        return at_most(gagliardo_seminorm(from_values(std::vector<double>(257, 3.0)), {0.5, 2.0, 0.0}).raw, 0.0);
    }});
    c.push_back({"trivial_forward_sum_unit", [](std::uint64_t seed, const O&) {
        const auto g = fbm_path(0.5, 256, seed);
        const auto f = from_values(std::vector<double>(257, 1.0));
        std::vector<std::size_t> p{0, 17, 100, 256};
        return at_most(std::abs(stieltjes_forward_sum(f, g, p) - (g.x.back() - g.x.front())), 1e-12);
    }});
    c.push_back({"trivial_zahle_unit", [](std::uint64_t seed, const O&) {
        const auto g = fbm_path(0.7, 256, seed);
        const auto f = from_values(std::vector<double>(257, 1.0));
        return at_most(std::abs(zahle_integral(f, g, 0.4).raw - (g.x.back() - g.x.front())), 1e-12);
    }});
    c.push_back({"trivial_empty_packing", [](std::uint64_t, const O&) {
        return at_most(packing_prefunctional(linear_path(64), {}, 2.0, -0.3, 1.0, 0.25).report.raw, 0.0);
    }});
    c.push_back({"oracle_riesz_constant", [](std::uint64_t, const O& o) {
        return at_most(rel(riesz_constant(0.7, 1), oracle(o, "riesz_constant_g0.7_n1")), 1e-13);
    }});
    c.push_back({"oracle_semigroup", [](std::uint64_t, const O& o) {
        return at_most(rel(kernel_convolution_1d(0.3, 0.4, 1.0), oracle(o, "semigroup_k0.7_at_1")), 0.01);
    }});
    c.push_back({"oracle_lebesgue_energy", [](std::uint64_t, const O& o) {
        return at_most(rel(energy(occupation_measure(linear_path(4096)), 0.3, 2.0).raw, oracle(o, "lebesgue_energy_g0.3_q2")), 0.01);
    }});
    c.push_back({"oracle_berman_linear", [](std::uint64_t, const O& o) {
        return at_most(rel(berman_ratio(linear_path(4096), {0.0, 1.0}, -0.3, 2.0).raw, oracle(o, "berman_K_linear_a-0.3_p2")), 0.05);
    }});
    c.push_back({"oracle_marchaud_linear", [](std::uint64_t, const O& o) {
        const auto d = weyl_marchaud(linear_path(1024), {0.5, Side::left_from_0, true}, 1.0);
        return at_most(rel(d.real(), oracle(o, "marchaud_linear_a0.5_t1")), 1e-10);
    }});
    c.push_back({"oracle_marchaud_direct", [](std::uint64_t, const O& o) {
        return at_most(rel(oracle(o, "marchaud_linear_a0.5_t1_direct"), oracle(o, "marchaud_linear_a0.5_t1")), 1e-8);
    }});
    c.push_back({"oracle_zahle_smooth", [](std::uint64_t, const O& o) {
        const auto f = from_values(smooth_values(4096, [](double t) { return t * t; }));
        const auto g = from_values(smooth_values(4096, [](double t) { return std::sin(t); }));
        return at_most(std::abs(zahle_integral(f, g, 0.4).raw - oracle(o, "zahle_t2_sint")), 1e-4);
    }});
    c.push_back({"oracle_variability_linear", [](std::uint64_t, const O& o) {
        const auto prof = variability_profile(indicator_interval(0.25, 0.75), linear_path(16384), 0.5, 1e-3);
        return at_most(rel(variability_norm(prof, 1.0).raw, oracle(o, "variability_linear_s0.5_p1")), 0.02);
    }});
    c.push_back({"oracle_gagliardo_linear", [](std::uint64_t, const O& o) {
        return at_most(rel(gagliardo_seminorm(linear_path(1024), {0.5, 2.0, 0.0}).raw, oracle(o, "gagliardo_linear_t0.5_p2")), 1e-3);
    }});
    c.push_back({"oracle_sobolev_linear", [](std::uint64_t, const O& o) {
        return at_most(rel(sobolev_norm(linear_path(1024), {0.5, 2.0, 0.0}).raw, oracle(o, "sobolev_linear_t0.5_p2")), 2e-3);
    }});
    c.push_back({"oracle_hardy_linear", [](std::uint64_t, const O& o) {
        const auto h = hardy_bound_report(linear_path(2048), 0.4, 2.0);
        return at_most(std::max(rel(h.lhs, oracle(o, "hardy_linear_lhs_b0.4_p2")), rel(h.rhs, oracle(o, "hardy_linear_rhs_b0.4_p2"))), 1e-3);
    }});
    c.push_back({"oracle_wolff_atom", [](std::uint64_t, const O& o) {
        const auto m = make_measure(1, {0.0}, {1.0}, 1e-2, false);
        const double x = 0.0;
        return at_most(rel(wolff_potential(m, 0.25, 2.0, {&x, 1}), oracle(o, "wolff_atom_g0.25_p2_rho5e-3")), 1e-3);
    }});
    c.push_back({"oracle_gradient_potential", [](std::uint64_t, const O& o) {
        const double x = 2.0;
        return at_most(rel(gradient_potential(indicator_interval(0.0, 1.0), 0.5, {&x, 1}, 1e-3),
                           oracle(o, "gradient_potential_interval_s0.5_x2")), 1e-12);
    }});
    c.push_back({"oracle_local_time_tent", [](std::uint64_t, const O& o) {
        GeneratorConfig g;
        g.family = "tent";
        g.N = 1 << 16;
        const auto lt = local_time_histogram(occupation_measure(generate_path(g, 0)), std::ldexp(1.0, -8));
        double e = 0.0;
        for (std::size_t i = 0; i < lt.size(); ++i)
            if (lt.centers[i] > 0.05 && lt.centers[i] < 0.95) e = std::max(e, std::abs(lt.density[i] - oracle(o, "local_time_tent")));
        return at_most(e, 0.05);
    }});
    c.push_back({"oracle_fourier_lebesgue", [](std::uint64_t, const O& o) {
        const auto mu = occupation_measure(linear_path(4096));
        const double xi = 1.0;
        return at_most(std::abs(std::abs(measure_fourier(mu, {&xi, 1})) - oracle(o, "fourier_lebesgue_abs_xi1")), 1.0 / 4096.0);
    }});
    c.push_back({"oracle_fourier_atom", [](std::uint64_t, const O& o) {
        const auto m = make_measure(1, {0.37}, {1.0}, 1e-2, true);
        const double xi = 5.3;
        return at_most(std::abs(std::abs(measure_fourier(m, {&xi, 1})) - oracle(o, "fourier_atom_abs")), 1e-12);
    }});
    c.push_back({"oracle_square_sobolev", [](std::uint64_t, const O& o) {
        std::vector<double> pts, w;
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j) {
                pts.push_back((i + 0.5) / 32.0);
                pts.push_back((j + 0.5) / 32.0);
                w.push_back(1.0 / 1024.0);
            }
        const auto m = make_measure(2, pts, w, 1.0 / 32.0);
        const double f = fourier_weighted_norm(m, -0.3, 2.0, make_fourier_grid(2, support_diameter(m))).raw;
        return at_most(rel(f, oracle(o, "square_sobolev_norm_a-0.3_p2")), 0.01);
    }});
    c.push_back({"invariant_compose_homogeneity", [](std::uint64_t seed, const O&) {
        const auto X = fbm_path(0.5, 1024, seed);
        const auto phi = indicator_interval(-0.2, 0.3);
        const auto a = compose(phi, X), b = compose(scaled(phi, 3.0), X);
        double e = 0.0;
        for (std::size_t i = 0; i < a.path.size(); ++i) e = std::max(e, std::abs(b.path.x[i] - 3.0 * a.path.x[i]));
        return at_most(e, 0.0);
    }});
    c.push_back({"invariant_tau_sigma_p2", [](std::uint64_t, const O&) {
        const auto ts = tau_sigma(linear_path(2048), {0.0, 1.0}, 2.0, -0.3);
        return at_most(std::abs(ts.tau - ts.sigma) / ts.tau, 0.05);
    }});
    c.push_back({"invariant_holder_monotone_theta", [](std::uint64_t seed, const O&) {
        const auto X = fbm_path(0.6, 512, seed);
        double worst = 0.0, prev = 0.0;
        for (double th : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const double v = gagliardo_seminorm(X, {th, inf, 0.0}).raw;
            worst = std::max(worst, prev - v);
            prev = v;
        }
        return at_most(worst, 0.0);
    }});
    c.push_back({"invariant_gagliardo_triangle", [](std::uint64_t seed, const O&) {
        const auto f = fbm_path(0.5, 512, seed), g = fbm_path(0.7, 512, seed + 1);
        auto h = f;
        for (std::size_t i = 0; i < h.x.size(); ++i) h.x[i] += g.x[i];
        const SeminormParams q{0.4, 2.0, 0.0};
        const double excess = gagliardo_seminorm(h, q).raw - gagliardo_seminorm(f, q).raw - gagliardo_seminorm(g, q).raw;
        return at_most(excess, 1e-12);
    }});
    c.push_back({"invariant_power_mean_monotone", [](std::uint64_t seed, const O&) {
        const auto prof = variability_profile(indicator_interval(-0.2, 0.3), fbm_path(0.5, 1024, seed), 0.3, 1e-3);
        double worst = 0.0, prev = 0.0;
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            const double v = variability_norm(prof, p).raw;
            worst = std::max(worst, prev - v);
            prev = v;
        }
        return at_most(worst, 1e-12);
    }});
    c.push_back({"invariant_zahle_bilinear", [](std::uint64_t seed, const O&) {
        const auto f = fbm_path(0.7, 512, seed), h = fbm_path(0.8, 512, seed + 1), g = fbm_path(0.75, 512, seed + 2);
        auto fh = f;
        for (std::size_t i = 0; i < fh.x.size(); ++i) fh.x[i] = 2.0 * f.x[i] + 3.0 * h.x[i];
        const double a = zahle_integral(fh, g, 0.4).raw;
        const double b = 2.0 * zahle_integral(f, g, 0.4).raw + 3.0 * zahle_integral(h, g, 0.4).raw;
        return at_most(std::abs(a - b) / std::max(1.0, std::abs(b)), 1e-10);
    }});
    c.push_back({"invariant_zahle_alpha_independence", [](std::uint64_t, const O&) {
        const auto f = from_values(smooth_values(4096, [](double t) { return t * t; }));
        const auto g = from_values(smooth_values(4096, [](double t) { return std::sin(t); }));
        std::vector<double> v;
        double delta = 0.0;
        for (double a : {0.3, 0.45, 0.6}) {
            const auto r = zahle_integral(f, g, a);
            v.push_back(r.raw);
            delta = std::max(delta, r.refinement_delta);
        }
        const double mean = (v[0] + v[1] + v[2]) / 3.0;
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        return at_most(std::sqrt(ss / 2.0), 10.0 * delta);
    }});
    c.push_back({"invariant_limiting_variation_linear", [](std::uint64_t, const O&) {
        const auto X = linear_path(1024);
        const auto r = limiting_variation(X, 1.0, {32 * X.dt, 16 * X.dt, 8 * X.dt});
        double e = 0.0;
        for (double v : r.ladder) e = std::max(e, std::abs(v - 1.0));
        return at_most(e, 1e-12);
    }});
    return c;
}

// '*' matches any run of characters.
inline bool wildcard_match(const std::string& pat, const std::string& s) {
    std::size_t p = 0, i = 0, star = std::string::npos, mark = 0;
    while (i < s.size()) {
        if (p < pat.size() && pat[p] == s[i]) {
            ++p;
            ++i;
        } else if (p < pat.size() && pat[p] == '*') {
            star = p++;
            mark = i;
        } else if (star != std::string::npos) {
            p = star + 1;
            i = ++mark;
        } else {
            return false;
        }
    }
    while (p < pat.size() && pat[p] == '*') ++p;
    return p == pat.size();
}

inline std::vector<CheckRow> verify_suite(const std::string& filter, std::uint64_t seed,
                                          const std::string& oracle_file = default_oracle_file()) {
    std::vector<CheckRow> rows;
    std::map<std::string, double> oracles;
    bool oracles_ok = true;
    try {
        oracles = load_oracles(oracle_file);
    } catch (const Error&) {
        oracles_ok = false;
    }
    for (const auto& ch : verify_checks()) {
        if (!wildcard_match(filter, ch.id)) continue;
        CheckRow r{ch.id, "fail", std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(), 0.0};
        const auto t0 = std::chrono::steady_clock::now();
        try {
            if (!oracles_ok && ch.id.rfind("oracle_", 0) == 0) throw Error("oracle file missing");
            const CheckResult res = ch.run(seed, oracles);
            r.status = res.pass ? "pass" : "fail";
            r.value = res.value;
            r.bound = res.bound;
        } catch (const std::exception&) {
            r.status = "error";
        }
        r.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back(r);
    }
    if (rows.empty()) rows.push_back({"warning", "no checks match filter " + filter, 0.0, 0.0, 0.0});
    return rows;
}

inline bool all_passed(const std::vector<CheckRow>& rows) {
    for (const auto& r : rows)
        if (r.status != "pass" && r.id != "warning") return false;
    return true;
}

inline void write_check_table(std::ostream& out, const std::vector<CheckRow>& rows, bool with_runtime) {
    if (with_runtime) {
        CsvWriter w(out, {"check_id", "status", "value", "bound", "runtime"});
        for (const auto& r : rows) w.write_row(row(r.id, r.status, r.value, r.bound, r.runtime));
    } else {
        CsvWriter w(out, {"check_id", "status", "value", "bound"});
        for (const auto& r : rows) w.write_row(row(r.id, r.status, r.value, r.bound));
    }
}

struct RunSummary {
    std::vector<std::string> files;
    bool checks_passed = true;
};

// Writes rows.csv, summary.csv, plot_<experiment>.csv, manifest.txt and experiment extras
// into out_dir. The path for seed s is generated once at N and decimated for coarser levels.
inline RunSummary run_experiment(const ExperimentConfig& c, const std::string& out_dir) {
    namespace fs = std::filesystem;
    validate_config(c);
    const fs::path out(out_dir);
    fs::create_directories(out);
    RunSummary summary;
    auto file = [&](const std::string& name) {
        summary.files.push_back((out / name).string());
        return std::ofstream(out / name, std::ios::binary);
    };
    {
        auto m = file("manifest.txt");
        const std::string canon = canonical_text(c);
        char hash[17];
        std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(canon)));
        m << "code_version = " << code_version << "\n";
        m << "config_hash = " << hash << "\n";
        m << "experiment = " << c.experiment << "\n";
        for (std::uint64_t s : c.seeds) {
            m << "seed." << s << ".streams = path:0.." << (c.generator.dim - 1);
            if (c.experiment == "key_estimate" || c.experiment == "seminorm") m << ", gagliardo_bands";
            if (c.experiment == "berman") m << ", windows:0x57A7";
            m << "\n";
        }
        m << "[config]\n" << canon;
    }
    if (c.experiment == "verify") {
        std::vector<CheckRow> all;
        for (std::uint64_t s : c.seeds) {
            auto rows = verify_suite(c.filter, s);
            summary.checks_passed = summary.checks_passed && all_passed(rows);
            all.insert(all.end(), rows.begin(), rows.end());
        }
        auto v = file("verify.csv");
        write_check_table(v, all, false);
        return summary;
    }
    auto rows_file = file("rows.csv");
    CsvWriter rows(rows_file, {"seed", "refinement", "N", "quantity", "value", "raw", "refinement_delta", "verdict", "ladder",
                               "resolution", "note"});
    std::map<std::string, std::vector<double>> finest_values;
    std::vector<std::pair<double, double>> plot;
    for (std::size_t si = 0; si < c.seeds.size(); ++si) {
        const std::uint64_t seed = c.seeds[si];
        const SampledPath full = generate_path(c.generator, seed);
        for (int level = 0; level < c.refinements; ++level) {
            const std::size_t k = std::size_t{1} << (c.refinements - 1 - level);
            const SampledPath X = k == 1 ? full : decimate(full, k);
            const bool finest = level + 1 == c.refinements;
            const std::string tag = "seed" + std::to_string(seed);
            const auto lo = detail::run_level(c, X, seed, finest && si == 0, out, tag);
            if (finest && si == 0) {
                for (const std::string& extra : {"profile_", "composition_", "windows_"})
                    if (fs::exists(out / (extra + tag + ".csv"))) summary.files.push_back((out / (extra + tag + ".csv")).string());
            }
            for (const auto& q : lo.quantities) {
                const auto& r = q.report;
                rows.write_row(row(std::to_string(seed), std::to_string(level), std::to_string(X.steps()), q.name, r.value, r.raw,
                                   r.refinement_delta, std::string(to_string(r.verdict)), detail::join(r.ladder),
                                   detail::join(r.resolution), r.note));
                if (finest) finest_values[q.name].push_back(r.value);
            }
            if (si == 0 && (c.experiment == "occupation" ? finest : true)) plot.insert(plot.end(), lo.plot.begin(), lo.plot.end());
        }
    }
    {
        auto s = file("summary.csv");
        CsvWriter w(s, {"quantity", "count", "min", "max", "median"});
        for (auto& [name, v] : finest_values) {
            std::sort(v.begin(), v.end());
            w.write_row(row(name, v.size(), v.front(), v.back(), v[v.size() / 2]));
        }
    }
    {
        auto p = file("plot_" + c.experiment + ".csv");
        auto w = c.experiment == "occupation" ? CsvWriter(p, {"radius", "sup_mass"}) : CsvWriter(p, {"dt", "value"});
        for (const auto& [a, b] : plot) w.write_row(row(a, b));
    }
    return summary;
}

}  // namespace fracpath
