// Walk through the main objects on one fractional Brownian path.
#include <fracpath/berman.hpp>
#include <fracpath/fracint.hpp>
#include <fracpath/occupation.hpp>
#include <fracpath/pathgen.hpp>
#include <fracpath/potential.hpp>
#include <fracpath/seminorm.hpp>
#include <fracpath/varcomp.hpp>

#include <cstdio>
#include <cstdlib>
#include <numeric>

using namespace fracpath;

int main(int argc, char** argv) {
    const double H = argc > 1 ? std::atof(argv[1]) : 0.7;
    GeneratorConfig g;
    g.family = "fbm";
    g.hurst = H;
    g.N = 4096;
    const SampledPath X = generate_path(g, 1);

    const DiscreteMeasure mu = occupation_measure(X);
    std::printf("fbm H=%.2f, N=%zu, range diameter %.4f\n", H, X.steps(), path_diameter(X));
    std::printf("  empirical Holder exponent      %.4f\n", empirical_holder_exponent(X));
    std::printf("  occupation regularity slope    %.4f\n", default_regularity_exponent(mu));

    const auto e = energy(mu, 0.3, 2.0);
    std::printf("  (0.3, 2)-energy                %.6f  [%s]\n", e.value, to_string(e.verdict));

    const auto K = berman_ratio(X, {0.0, 1.0}, -0.3, 2.0);
    std::printf("  Berman ratio, alpha=-0.3, p=2  %.6f\n", K.value);

    const auto s = gagliardo_seminorm(X, {0.5, 2.0, 0.0});
    std::printf("  [X]_{1/2,2}                    %.6f  [%s]\n", s.value, to_string(s.verdict));

    const auto phi = indicator_interval(-0.2, 0.3);
    const auto prof = variability_profile(phi, X, 0.6, 1e-3);
    const auto v = variability_norm(prof, 1.0);
    std::printf("  (0.6, 1)-variability of 1_(-0.2,0.3)  %.6f  [%s]\n", v.value, to_string(v.verdict));

    const auto comp = compose(phi, X);
    const auto z = zahle_integral(comp.path, X, 0.5);
    std::printf("  int 1_(-0.2,0.3)(X) dX (Zahle)  %.6f  [%s], delta %.2g\n", z.value, to_string(z.verdict), z.refinement_delta);
    std::vector<std::size_t> all(X.size());
    std::iota(all.begin(), all.end(), 0);
    std::printf("  forward Riemann-Stieltjes sum   %.6f\n", stieltjes_forward_sum(comp.path, X, all));
    return 0;
}
