// Acceptance gate: `acceptance N` runs criterion N and prints one line,
// `acceptance` with no argument runs all ten. Exit status 0 iff every run criterion passes.
#include <fracpath/harness.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>

using namespace fracpath;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... xs) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, xs...);
    return buf;
}

SampledPath family(const std::string& name, std::size_t N) {
    GeneratorConfig g;
    g.family = name;
    g.N = N;
    return generate_path(g, 0);
}

SampledPath fbm(double H, std::size_t N, std::uint64_t seed, int dim = 1) {
    GeneratorConfig g;
    g.family = "fbm";
    g.hurst = H;
    g.N = N;
    g.dim = dim;
    return generate_path(g, seed);
}

std::vector<double> smooth(std::size_t N, double (*f)(double)) {
    std::vector<double> v(N + 1);
    for (std::size_t i = 0; i <= N; ++i) v[i] = f(static_cast<double>(i) / static_cast<double>(N));
    return v;
}

Outcome local_time() {
    constexpr double tol = 0.05;
    const auto lt = local_time_histogram(occupation_measure(family("tent", 1 << 16)), std::ldexp(1.0, -8));
    double dev = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i)
        if (lt.centers[i] > 0.05 && lt.centers[i] < 0.95) dev = std::max(dev, std::abs(lt.density[i] - 1.0));
    return {dev <= tol, fmt("sup deviation %.3g (tol %.3g)", dev, tol)};
}

Outcome semigroup() {
    constexpr double tol = 0.01;
    const double num = kernel_convolution_1d(0.3, 0.4, 1.0), ref = riesz_kernel(0.7, 1, 1.0);
    const double rel = std::abs(num / ref - 1.0);
    return {rel <= tol, fmt("(k_0.3*k_0.4)(1) = %.10g, k_0.7(1) = %.10g, rel %.3g (tol %.3g)", num, ref, rel, tol)};
}

Outcome regularity() {
    constexpr double tol = 0.15;
    constexpr int seeds = 50;
    std::string detail;
    bool pass = true;
    for (auto [n, H] : {std::pair{1, 0.3}, std::pair{2, 0.5}}) {
        double s = 0.0;
        for (int k = 1; k <= seeds; ++k) s += default_regularity_exponent(occupation_measure(fbm(H, 1 << 16, static_cast<std::uint64_t>(k), n)));
        const double mean = s / seeds, target = std::min(static_cast<double>(n), 1.0 / H);
        pass = pass && std::abs(mean - target) <= tol;
        detail += fmt("n=%d H=%.1f mean %.4f target %.1f; ", n, H, mean, target);
    }
    return {pass, detail + fmt("tol %.2f", tol)};
}

Outcome variability() {
    constexpr double tol = 0.02;
    const double exact = 2.179861158688207;
    const auto phi = indicator_interval(0.25, 0.75);
    bool stable = true;
    double finest = 0.0;
    for (std::size_t N : {1024u, 4096u, 16384u}) {
        const auto prof = variability_profile(phi, family("linear", N), 0.5, 1e-3);
        const auto one = variability_norm(prof, 1.0), three = variability_norm(prof, 3.0);
        stable = stable && one.verdict == Verdict::finite && three.diverged();
        finest = one.raw;
    }
    const double rel = std::abs(finest / exact - 1.0);
    return {stable && rel <= tol, fmt("verdicts finite/divergent at N=2^10,2^12,2^14: %s; p=1 value %.5f vs %.5f rel %.3g (tol %.3g)",
                                      stable ? "yes" : "no", finest, exact, rel, tol)};
}

Outcome key_estimate() {
    constexpr double change_tol = 0.25, homog_tol = 1e-10;
    const auto phi = indicator_interval(0.25, 0.75);
    double fine = 0.0, coarse = 0.0;
    bool finite = true;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto X = fbm(0.7, 1 << 12, seed);
        const auto f = key_estimate_report(phi, X, 0.6, 0.65, 2.0, inf, 0.35, 2.0, 1e-3, seed);
        const auto c = key_estimate_report(phi, decimate(X, 2), 0.6, 0.65, 2.0, inf, 0.35, 2.0, 1e-3, seed);
        finite = finite && std::isfinite(f.ratio) && std::isfinite(c.ratio);
        fine = std::max(fine, f.ratio);
        coarse = std::max(coarse, c.ratio);
    }
    const double change = std::abs(fine - coarse) / fine;
    const auto X = fbm(0.7, 1 << 12, 0);
    const auto a = key_estimate_report(phi, X, 0.6, 0.65, 2.0, inf, 0.35, 2.0, 1e-3, 0);
    const auto b = key_estimate_report(scaled(phi, 3.7), X, 0.6, 0.65, 2.0, inf, 0.35, 2.0, 1e-3, 0);
    const double homog = std::max(std::abs(b.ratio / a.ratio - 1.0), std::abs(b.lhs.raw / (3.7 * a.lhs.raw) - 1.0));
    return {finite && change <= change_tol && homog <= homog_tol,
            fmt("all ratios finite: %s; max ratio %.4f (dt) vs %.4f (2dt), change %.3g (tol %.2f); homogeneity %.2g (tol %.0e)",
                finite ? "yes" : "no", fine, coarse, change, change_tol, homog, homog_tol)};
}

Outcome zahle_smooth() {
    constexpr double tol = 1e-4;
    const double exact = 2.0 * std::cos(1.0) - std::sin(1.0);
    const auto f = make_path(1, 1.0, Interpolation::piecewise_linear, smooth(4096, [](double t) { return t * t; }));
    const auto g = make_path(1, 1.0, Interpolation::piecewise_linear, smooth(4096, [](double t) { return std::sin(t); }));
    double err = 0.0, lo = inf, hi = -inf;
    for (double a : {0.3, 0.45, 0.6}) {
        const double v = zahle_integral(f, g, a).raw;
        err = std::max(err, std::abs(v - exact));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {err <= tol && hi - lo <= tol, fmt("max error %.3g, alpha spread %.3g (tol %.0e each)", err, hi - lo, tol)};
}

// Levels at the quartiles of the sampled values, so the path crosses both often.
// alpha = 1/2 balances the regularity margins of the two derivative profiles.
Outcome composition_integral() {
    constexpr double conv_factor = 5.0, spread_factor = 3.0, alpha = 0.5;
    constexpr std::size_t N = 4096;
    constexpr int seeds = 5;
    int exists = 0, converges = 0, spreads = 0;
    std::string per;
    for (int seed = 1; seed <= seeds; ++seed) {
        const auto X = fbm(0.8, N, static_cast<std::uint64_t>(seed));
        std::vector<double> s = X.x;
        std::sort(s.begin(), s.end());
        const auto f = compose(indicator_interval(s[N / 4], s[3 * N / 4]), X).path;
        const auto z = zahle_integral(f, X, alpha);
        const double s8 = stieltjes_forward_sum(f, X, continuity_partition(f, 8));
        const double s4 = stieltjes_forward_sum(f, X, continuity_partition(f, 4));
        const double tol = conv_factor * (z.refinement_delta + std::abs(s4 - s8));
        const double spread = extremal_forward_sum(f, X, 4, true) - extremal_forward_sum(f, X, 4, false);
        const bool e = !z.diverged(), c = std::abs(s4 - z.raw) <= tol, w = spread > spread_factor * tol;
        exists += e;
        converges += c;
        spreads += w;
        per += fmt(" s%d:Z=%.4f%s,S4=%.4f,tol=%.3g,spread=%.3g", seed, z.raw, e ? "" : "(sentinel)", s4, tol, spread);
    }
    const bool pass = exists == seeds && converges == seeds && spreads == seeds;
    return {pass, fmt("no sentinel %d/%d, forward sums converge %d/%d, adversarial spread > 3x tol %d/%d;", exists, seeds,
                      converges, seeds, spreads, seeds) + per};
}

Outcome berman() {
    constexpr double min_tol = 0.20, scale_tol = 0.10, oracle_tol = 0.05;
    ExperimentConfig c;
    c.experiment = "berman";
    c.generator.family = "fbm";
    c.generator.N = 1 << 12;
    c.refinements = 2;
    c.params = {{"alpha", -0.3}, {"p", 2.0}, {"windows", 100}};
    const auto X = generate_path(c.generator, 1);
    const auto Xc = decimate(X, 2);
    double kmin_f = inf, kmin_c = inf;
    bool positive = true;
    for (const auto& w : detail::random_windows(c, 1)) {
        const double f = berman_ratio(X, w, -0.3, 2.0).raw, g = berman_ratio(Xc, w, -0.3, 2.0).raw;
        positive = positive && f > 0.0 && g > 0.0;
        kmin_f = std::min(kmin_f, f);
        kmin_c = std::min(kmin_c, g);
    }
    const double min_change = std::abs(kmin_f - kmin_c) / kmin_c;
    const auto L = family("linear", 1 << 12);
    double lo = inf, hi = 0.0;
    for (double len : {1.0, 0.5, 0.25, 0.125, 0.0625}) {
        const double k = berman_ratio(L, {0.0, len}, -0.3, 2.0).raw;
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    const double pinned = load_oracles(default_oracle_file()).at("berman_K_linear_a-0.3_p2");
    const double oracle_rel = std::abs(hi / pinned - 1.0);
    const bool pass = positive && min_change <= min_tol && hi / lo - 1.0 <= scale_tol && oracle_rel <= oracle_tol;
    return {pass, fmt("fbm: all K > 0: %s, min K %.4f vs %.4f under halving, change %.3g (tol %.2f); linear: scale spread %.3g (tol %.2f), "
                      "vs pinned %.5f rel %.3g (tol %.2f)",
                      positive ? "yes" : "no", kmin_f, kmin_c, min_change, min_tol, hi / lo - 1.0, scale_tol, pinned, oracle_rel, oracle_tol)};
}

DiscreteMeasure unit_square(int M) {
    std::vector<double> pts, w;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            pts.push_back((i + 0.5) / M);
            pts.push_back((j + 0.5) / M);
            w.push_back(1.0 / (M * M));
        }
    return make_measure(2, pts, w, 1.0 / M);
}

// Measures with pinned reference values, plus one-dimensional fbm occupations whose
// occupation measures are absolutely continuous at the sampling scale. The planar path
// line is informational: its discrete occupation measure lives on segments, whose
// (0.3, 2) energy is infinite, so each route reports its own regularization.
Outcome dual_route() {
    constexpr double tol = 0.05;
    const auto oracles = load_oracles(default_oracle_file());
    std::vector<std::pair<std::string, DiscreteMeasure>> set{
        {"lebesgue", occupation_measure(family("linear", 4096))},
        {"tent", occupation_measure(family("tent", 4096))},
        {"unit_square", unit_square(32)},
        {"fbm0.5#1", occupation_measure(fbm(0.5, 4096, 1))},
        {"fbm0.5#2", occupation_measure(fbm(0.5, 4096, 2))},
        {"fbm0.7#3", occupation_measure(fbm(0.7, 4096, 3))},
    };
    double worst = 0.0;
    std::string detail;
    for (const auto& [name, m] : set) {
        const double diam = std::max(support_diameter(m), m.cell_width);
        const double f = fourier_weighted_norm(m, -0.3, 2.0, make_fourier_grid(m.dim, diam)).raw;
        const double e = negative_sobolev_norm(m, -0.3, 2.0).raw;
        double rel = std::abs(f / e - 1.0);
        if (name == "unit_square") {
            const double pinned = oracles.at("square_sobolev_norm_a-0.3_p2");
            rel = std::max({rel, std::abs(f / pinned - 1.0), std::abs(e / pinned - 1.0)});
        }
        worst = std::max(worst, rel);
        detail += fmt(" %s %.3g;", name.c_str(), rel);
    }
    const auto planar = tau_sigma(fbm(0.5, 4096, 4, 2), {0.0, 1.0}, 2.0, -0.3);
    detail += fmt(" [informational] planar_fbm0.5 %.3g", std::abs(planar.fourier.raw / planar.energy.raw - 1.0));
    return {worst <= tol, fmt("max relative gap %.3g (tol %.2f):", worst, tol) + detail};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    namespace fs = std::filesystem;
    const std::vector<std::string> configs{
        "experiment = berman\nseeds = 1,2\nrefinements = 2\n[generator]\nN = 2048\n[params]\nalpha = -0.3\np = 2\nwindows = 10\n",
        "experiment = key_estimate\nseeds = 1\nrefinements = 2\n[generator]\nhurst = 0.7\nN = 2048\n[bv]\nkind = indicator_interval\n"
        "[params]\ns = 0.6\ntheta = 0.65\nbeta = 0.35\np = 2\nq = inf\nr = 2\n",
        "experiment = occupation\nseeds = 1..2\n[generator]\nhurst = 0.5\ndim = 2\nN = 8192\n",
        "experiment = verify\nseeds = 1\nfilter = *\n",
    };
    int identical = 0, files = 0;
    const fs::path root = fs::temp_directory_path() / "fracpath_acceptance_determinism";
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const auto c = parse_config(configs[i]);
        const fs::path a = root / (std::to_string(i) + "_t1"), b = root / (std::to_string(i) + "_t8");
        fs::remove_all(a);
        fs::remove_all(b);
        set_thread_count(1);
        run_experiment(c, a.string());
        set_thread_count(8);
        run_experiment(c, b.string());
        for (const auto& e : fs::directory_iterator(a)) {
            ++files;
            identical += slurp(e.path()) == slurp(b / e.path().filename());
        }
    }
    set_thread_count(1);
    return {identical == files && files > 0, fmt("%d/%d files byte-identical at 1 vs 8 threads", identical, files)};
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> c{
        {"local-time oracle", 5, local_time},
        {"kernel normalization", 30, semigroup},
        {"occupation regularity scaling", 300, regularity},
        {"variability dichotomy", 60, variability},
        {"key estimate", 600, key_estimate},
        {"Zahle integral, smooth pair", 120, zahle_smooth},
        {"composition integral end-to-end", 600, composition_integral},
        {"Berman inequality", 300, berman},
        {"dual-route consistency", 120, dual_route},
        {"determinism", 120, determinism},
    };
    return c;
}

bool run(std::size_t k) {
    const auto& c = criteria()[k - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = c.run();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = t < c.budget_s;
    const bool pass = o.pass && in_time;
    std::printf("criterion %zu %s: %s | %s | runtime %.1f s (budget %.0f s)\n", k, c.name, pass ? "PASS" : "FAIL", o.detail.c_str(), t,
                c.budget_s);
    std::fflush(stdout);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    bool ok = true;
    if (argc > 1) {
        const long k = std::strtol(argv[1], nullptr, 10);
        if (k < 1 || k > static_cast<long>(criteria().size())) {
            std::fprintf(stderr, "usage: acceptance [1..%zu]\n", criteria().size());
            return 2;
        }
        ok = run(static_cast<std::size_t>(k));
    } else {
        for (std::size_t k = 1; k <= criteria().size(); ++k) ok = run(k) && ok;
    }
    return ok ? 0 : 1;
}
