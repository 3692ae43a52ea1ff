#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "csv.hpp"
#include "detail/quadrature.hpp"
#include "potential.hpp"

namespace fracpath {

struct OracleEntry {
    std::string name;
    double value;
    std::string provenance;
};

namespace detail {

// D^{1/2}_{0+} of f(t) = t at t = 1 straight from the definition, with graded quadrature
// of the singular integral.
inline double marchaud_linear_direct() {
    const double a = 0.5;
    const double integral = graded_integral([&](double u) { return std::pow(1.0 - u, -a); }, 1.0, -1.0, a);
    return (1.0 + a * integral) / std::tgamma(1.0 - a);
}

// int int |x - y|^{-1.4} over the unit square, as 8 times a wedge 0 < theta < pi/4 in
// polar coordinates of x - y; the radial integral is closed form.
inline double square_riesz_double_integral() {
    const auto& rule = gauss16();
    double s = 0.0;
    const int panels = 64;
    const double h = 0.25 * pi / panels;
    for (int k = 0; k < panels; ++k)
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double th = h * (k + 0.5 * (rule.nodes[i] + 1.0));
            const double c = std::cos(th), sn = std::sin(th), R = 1.0 / c;
            const double radial = std::pow(R, 0.6) / 0.6 - (c + sn) * std::pow(R, 1.6) / 1.6 + c * sn * std::pow(R, 2.6) / 2.6;
            s += 0.5 * h * rule.weights[i] * radial;
        }
    return 8.0 * s;
}

}  // namespace detail

// Pinned reference values; every entry is a closed form or a direct quadrature of one.
inline std::vector<OracleEntry> reference_oracles() {
    const double c07 = riesz_constant(0.7, 1), c06 = riesz_constant(0.6, 1), c05 = riesz_constant(0.5, 1);
    const double leb = c06 * 2.0 / (0.6 * 1.6);
    return {
        {"riesz_constant_g0.7_n1", c07, "Gamma((n-g)/2) / (2^g pi^(n/2) Gamma(g/2)) at g=0.7, n=1"},
        {"semigroup_k0.7_at_1", c07 * std::pow(1.0, -0.3), "k_0.7(1); k_0.3 * k_0.4 = k_0.7"},
        {"lebesgue_energy_g0.3_q2", leb, "I_2^0.3(Leb[0,1]) = c(0.6,1) * int int |x-y|^-0.4 = c(0.6,1) * 2/(0.6*1.6)"},
        {"berman_K_linear_a-0.3_p2", std::sqrt(leb), "diam^0.2 * || |xi|^-0.3 mu^ ||_2 / 1 = sqrt(I_2^0.3) by Plancherel"},
        {"marchaud_linear_a0.5_t1", 2.0 / std::sqrt(pi), "Gamma(2)/Gamma(1.5) t^0.5 at t=1"},
        {"marchaud_linear_a0.5_t1_direct", detail::marchaud_linear_direct(), "definition by graded Gauss-Legendre quadrature"},
        {"zahle_t2_sint", 2.0 * std::cos(1.0) - std::sin(1.0), "int_0^1 t^2 cos t dt"},
        {"variability_linear_s0.5_p1", c05 * 2.0 * 2.0 * (std::sqrt(0.25) + std::sqrt(0.75)),
         "c(0.5,1) int_0^1 |t-1/4|^-1/2 + |t-3/4|^-1/2 dt"},
        {"gagliardo_linear_t0.5_p2", 1.0, "int int |t-u|^0 on (0,1)^2"},
        {"sobolev_linear_t0.5_p2", std::sqrt(1.0 / 3.0) + 1.0, "||t||_L2 + [t]_0.5,2"},
        {"hardy_linear_lhs_b0.4_p2", 1.0 / 2.2, "int_0^1 t^1.2 dt"},
        {"hardy_linear_rhs_b0.4_p2", 2.0 / (1.2 * 2.2) + 1.0 / 3.0, "int int |t-u|^0.2 + int t^2"},
        {"wolff_atom_g0.25_p2_rho5e-3", 4.0 / std::sqrt(0.005),
         "unit atom regularized on a cell of radius rho: rho^-0.5 (1/0.5 + 1/0.5)"},
        {"gradient_potential_interval_s0.5_x2", c05 * (std::pow(2.0, -0.5) + 1.0), "U^0.5 (delta_0 + delta_1)(2)"},
        {"local_time_tent", 1.0, "tent on [0,1]: two crossings of slope 2"},
        {"fourier_lebesgue_abs_xi1", std::pow(2.0 * pi, -0.5) * 2.0 * std::sin(0.5), "|(2 pi)^-1/2 (1 - e^-i)/i|"},
        {"square_sobolev_norm_a-0.3_p2", std::sqrt(riesz_constant(0.6, 2) * detail::square_riesz_double_integral()),
         "sqrt(c(0.6,2) int int |x-y|^-1.4) for the uniform measure on [0,1]^2"},
        {"fourier_atom_abs", std::pow(2.0 * pi, -0.5), "(2 pi)^-1/2 for a unit atom, n=1"},
    };
}

inline void write_oracles(std::ostream& out) {
    out << "# name = value, one per line, preceded by how the value was obtained\n";
    for (const auto& e : reference_oracles()) out << "# " << e.provenance << '\n' << e.name << " = " << format_double(e.value) << '\n';
}

inline std::map<std::string, double> load_oracles(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("oracle file not readable: " + path);
    std::map<std::string, double> m;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        m[key] = val == "inf" ? inf : std::stod(val);
    }
    return m;
}

#ifdef FRACPATH_ORACLE_FILE
inline const char* default_oracle_file() { return FRACPATH_ORACLE_FILE; }
#else
inline const char* default_oracle_file() { return "data/oracles.txt"; }
#endif

}  // namespace fracpath
