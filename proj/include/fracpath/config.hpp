#pragma once

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bvfun.hpp"
#include "pathgen.hpp"

namespace fracpath {

class ConfigError : public Error {
public:
    using Error::Error;
};

inline const std::set<std::string>& experiment_names() {
    static const std::set<std::string> names{"occupation", "potential", "variability", "compose", "seminorm",
                                             "key_estimate", "integrate", "berman", "verify"};
    return names;
}

struct ExperimentConfig {
    std::string experiment;
    GeneratorConfig generator;
    std::optional<BVFunction> bv;
    double bv_resolution = 1e-3;
    std::map<std::string, double> params;
    std::string filter = "*";
    std::vector<std::uint64_t> seeds{1};
    int refinements = 1;
    std::string output_dir = "out";
    std::map<std::string, std::string> entries;  // every key as written, dotted

    double param(const std::string& key, double fallback) const {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }
    double need(const std::string& key) const {
        const auto it = params.find(key);
        if (it == params.end()) throw ConfigError("missing parameter params." + key);
        return it->second;
    }
};

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace detail {

inline double parse_number(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("not a number: " + key + " = " + v);
    }
}

inline std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
        if (a == std::string::npos) continue;
        out.push_back(parse_number(key, item.substr(a, b - a + 1)));
    }
    return out;
}

inline std::vector<std::uint64_t> parse_seeds(const std::string& v) {
    std::vector<std::uint64_t> out;
    const auto dots = v.find("..");
    if (dots != std::string::npos) {
        const auto a = static_cast<std::uint64_t>(parse_number("seeds", v.substr(0, dots)));
        const auto b = static_cast<std::uint64_t>(parse_number("seeds", v.substr(dots + 2)));
        if (b < a) throw ConfigError("seeds: empty range " + v);
        for (std::uint64_t s = a; s <= b; ++s) out.push_back(s);
        return out;
    }
    for (double d : parse_list("seeds", v)) {
        if (d < 0 || d != std::floor(d)) throw ConfigError("seeds: not a nonnegative integer");
        out.push_back(static_cast<std::uint64_t>(d));
    }
    if (out.empty()) throw ConfigError("seeds: empty list");
    return out;
}

inline BVFunction build_bv(const std::map<std::string, std::string>& e) {
    auto get = [&](const std::string& k) -> const std::string* {
        const auto it = e.find("bv." + k);
        return it == e.end() ? nullptr : &it->second;
    };
    auto num = [&](const std::string& k, double d) { return get(k) ? parse_number("bv." + k, *get(k)) : d; };
    auto list = [&](const std::string& k) { return get(k) ? parse_list("bv." + k, *get(k)) : std::vector<double>{}; };
    const std::string kind = get("kind") ? *get("kind") : "";
    BVFunction f;
    try {
        if (kind == "indicator_interval") f = indicator_interval(num("a", 0.25), num("b", 0.75));
        else if (kind == "staircase") f = staircase(list("jumps"), list("heights"), num("base", 0.0));
        else if (kind == "constant") f = constant_function(num("value", 1.0));
        else if (kind == "indicator_box") f = indicator_box(list("lo"), list("hi"));
        else if (kind == "indicator_ball") f = indicator_ball(list("center"), num("radius", 1.0));
        else if (kind == "smooth_bump") f = smooth_bump(list("center"), num("radius", 1.0));
        else if (kind == "riesz_kernel_kind") f = riesz_kernel_function(static_cast<int>(num("dim", 2)), num("gamma", 1.5), num("cutoff", 1.0));
        else throw ConfigError("bv.kind: unknown kind '" + kind + "'");
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& err) {
        throw ConfigError(std::string("bv: ") + err.what());
    }
    f.scale *= num("scale", 1.0);
    return f;
}

inline const std::set<std::string>& known_keys() {
    static const std::set<std::string> k{
        "experiment", "seeds", "refinements", "output_dir", "filter",
        "generator.family", "generator.dim", "generator.T", "generator.N", "generator.hurst", "generator.stable_alpha",
        "generator.slope", "generator.direction", "generator.value", "generator.breakpoints", "generator.heights",
        "generator.knot_times", "generator.knot_values", "generator.weier_a", "generator.weier_b", "generator.weier_cutoff",
        "bv.kind", "bv.a", "bv.b", "bv.jumps", "bv.heights", "bv.base", "bv.value", "bv.lo", "bv.hi", "bv.center",
        "bv.radius", "bv.gamma", "bv.cutoff", "bv.dim", "bv.scale", "bv.resolution"};
    return k;
}

inline const std::set<std::string>& known_params() {
    static const std::set<std::string> k{"s", "p", "q", "r", "theta", "beta", "alpha", "gamma", "delta",
                                         "windows", "window_length"};
    return k;
}

inline void flatten(const boost::property_tree::ptree& t, const std::string& prefix, std::map<std::string, std::string>& out) {
    for (const auto& [k, v] : t) {
        const std::string key = prefix.empty() ? k : prefix + "." + k;
        if (v.empty()) out[key] = v.data();
        else flatten(v, key, out);
    }
}

}  // namespace detail

inline void validate_config(const ExperimentConfig& c);

// Flat key = value text with [section] headers; section keys become section.key.
inline ExperimentConfig parse_config(const std::string& text) {
    boost::property_tree::ptree tree;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("config syntax: ") + e.message() + " at line " + std::to_string(e.line()));
    }
    ExperimentConfig c;
    detail::flatten(tree, "", c.entries);
    for (const auto& [k, v] : c.entries) {
        if (k.rfind("params.", 0) == 0) {
            const std::string name = k.substr(7);
            if (!detail::known_params().count(name)) throw ConfigError("unknown key " + k);
            c.params[name] = detail::parse_number(k, v);
        } else if (!detail::known_keys().count(k)) {
            throw ConfigError("unknown key " + k);
        }
    }
    const auto& e = c.entries;
    auto has = [&](const std::string& k) { return e.count(k) > 0; };
    auto num = [&](const std::string& k) { return detail::parse_number(k, e.at(k)); };
    auto list = [&](const std::string& k) { return detail::parse_list(k, e.at(k)); };
    if (!has("experiment")) throw ConfigError("missing key experiment");
    c.experiment = e.at("experiment");
    if (has("seeds")) c.seeds = detail::parse_seeds(e.at("seeds"));
    if (has("refinements")) c.refinements = static_cast<int>(num("refinements"));
    if (has("output_dir")) c.output_dir = e.at("output_dir");
    if (has("filter")) c.filter = e.at("filter");
    GeneratorConfig& g = c.generator;
    if (has("generator.family")) g.family = e.at("generator.family");
    if (has("generator.dim")) g.dim = static_cast<int>(num("generator.dim"));
    if (has("generator.T")) g.T = num("generator.T");
    if (has("generator.N")) {
        const double n = num("generator.N");
        if (!(n >= 1) || n != std::floor(n)) throw ConfigError("generator.N must be a positive integer");
        g.N = static_cast<std::size_t>(n);
    }
    if (has("generator.hurst")) g.hurst = num("generator.hurst");
    if (has("generator.stable_alpha")) g.stable_alpha = num("generator.stable_alpha");
    if (has("generator.slope")) g.slope = num("generator.slope");
    if (has("generator.direction")) g.direction = list("generator.direction");
    if (has("generator.value")) g.value = list("generator.value");
    if (has("generator.breakpoints")) g.breakpoints = list("generator.breakpoints");
    if (has("generator.heights")) g.heights = list("generator.heights");
    if (has("generator.knot_times")) g.knot_times = list("generator.knot_times");
    if (has("generator.knot_values")) g.knot_values = list("generator.knot_values");
    if (has("generator.weier_a")) g.weier_a = num("generator.weier_a");
    if (has("generator.weier_b")) g.weier_b = num("generator.weier_b");
    if (has("generator.weier_cutoff")) g.weier_cutoff = num("generator.weier_cutoff");
    if (has("bv.kind")) c.bv = detail::build_bv(e);
    if (has("bv.resolution")) c.bv_resolution = num("bv.resolution");
    validate_config(c);
    return c;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not readable: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

// Sorted key = value lines; the manifest hash is taken over this text.
inline std::string canonical_text(const ExperimentConfig& c) {
    std::map<std::string, std::string> e = c.entries;
    e["experiment"] = c.experiment;
    std::string seeds;
    for (std::size_t i = 0; i < c.seeds.size(); ++i) seeds += (i ? "," : "") + std::to_string(c.seeds[i]);
    e["seeds"] = seeds;
    e["output_dir"] = c.output_dir;
    std::string s;
    for (const auto& [k, v] : e) s += k + " = " + v + "\n";
    return s;
}

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

inline void check_unit(const ExperimentConfig& c, const std::string& k) {
    if (c.params.count(k)) require(c.params.at(k) > 0.0 && c.params.at(k) < 1.0, "params." + k + " must lie in (0, 1)");
}

}  // namespace detail

// Exponent ranges are checked against the operations each experiment calls.
inline void validate_config(const ExperimentConfig& c) {
    using detail::require;
    require(experiment_names().count(c.experiment) > 0, "experiment: unknown '" + c.experiment + "'");
    require(c.refinements >= 1 && c.refinements <= 8, "refinements must lie in [1, 8]");
    require(!c.seeds.empty(), "seeds: empty list");
    if (c.experiment == "verify") return;
    const GeneratorConfig& g = c.generator;
    static const std::set<std::string> families{"fbm", "stable_levy", "linear", "constant", "tent", "step",
                                                "piecewise_linear", "weierstrass"};
    require(families.count(g.family) > 0, "generator.family: unknown '" + g.family + "'");
    require(g.T > 0.0, "generator.T must be positive");
    require(g.dim >= 1 && g.dim <= 3, "generator.dim must lie in [1, 3]");
    if (g.family == "fbm") require(g.hurst > 0.0 && g.hurst < 1.0, "generator.hurst must lie in (0, 1)");
    if (g.family == "stable_levy") require(g.stable_alpha > 0.0 && g.stable_alpha <= 2.0, "generator.stable_alpha must lie in (0, 2]");
    const std::size_t coarsest = std::size_t{1} << (c.refinements - 1);
    require(g.N % coarsest == 0 && g.N / coarsest >= 4, "generator.N must be divisible by 2^(refinements-1) with >= 4 steps left");
    for (const char* k : {"s", "theta", "beta", "delta"}) detail::check_unit(c, k);
    if (c.experiment != "berman") detail::check_unit(c, "alpha");
    if (c.params.count("p")) require(c.params.at("p") >= 1.0, "params.p must be >= 1");
    if (c.params.count("q")) require(c.params.at("q") >= 1.0, "params.q must be >= 1");
    if (c.params.count("r")) require(c.params.at("r") >= 1.0, "params.r must be >= 1");
    const std::string& x = c.experiment;
    const bool needs_bv = x == "variability" || x == "compose" || x == "key_estimate";
    if (needs_bv) require(c.bv.has_value(), x + " needs a [bv] section");
    if (c.bv) require(c.bv->dim == g.dim || g.family == "linear" || g.family == "constant", "bv dimension differs from generator.dim");
    require(c.bv_resolution > 0.0, "bv.resolution must be positive");
    if (x == "variability") {
        c.need("s");
        c.need("p");
    } else if (x == "seminorm") {
        c.need("theta");
        c.need("p");
    } else if (x == "potential") {
        const double gm = c.need("gamma");
        require(gm > 0.0 && gm < g.dim, "params.gamma must lie in (0, n)");
        require(c.need("q") >= 1.0 && std::isfinite(c.need("q")), "params.q must be finite and >= 1");
    } else if (x == "key_estimate") {
        const double s = c.need("s"), th = c.need("theta"), p = c.need("p"), q = c.need("q"), b = c.need("beta"), r = c.need("r");
        require(1.0 / p + (std::isinf(q) ? 0.0 : s / q) <= 1.0 / r + 1e-12, "key_estimate: need 1/p + s/q <= 1/r");
        require(b < s * th, "key_estimate: need beta < s theta");
    } else if (x == "integrate") {
        c.need("alpha");
        require(g.dim == 1, "integrate: one-dimensional generator only");
    } else if (x == "berman") {
        const double a = c.need("alpha"), p = c.need("p");
        require(p > 1.0, "berman: need p > 1");
        require(std::isinf(p) ? a >= 0.0 : (a > -g.dim / p && a < g.dim - g.dim / p), "berman: alpha outside the admissible range");
        require(g.dim <= 2, "berman: dimensions 1 and 2 only");
        if (c.params.count("window_length"))
            require(c.params.at("window_length") > 0.0 && c.params.at("window_length") <= g.T, "params.window_length must lie in (0, T]");
    }
}

}  // namespace fracpath
