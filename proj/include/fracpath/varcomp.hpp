#pragma once

#include <vector>

#include "bvfun.hpp"
#include "detail/parallel.hpp"
#include "rng.hpp"

namespace fracpath {

struct VariabilityProfile {
    std::vector<double> times;
    std::vector<double> values;
    double s = 0.5;
    std::vector<std::size_t> singular_hits;
};

// U^{1-s}||D phi||(X_{t_i}) along the path. Samples on the jump set of phi or on a
// kernel singularity carry +inf and are listed in singular_hits.
inline VariabilityProfile variability_profile(const BVFunction& phi, const SampledPath& path, double s, double h) {
    if (!(s > 0.0 && s < 1.0)) throw Error("variability profile: need s in (0, 1)");
    if (phi.dim != path.dim) throw Error("variability profile: path and function dimensions differ");
    if (!(1.0 - s < phi.dim)) throw Error("variability profile: need 1 - s < n");
    const DiscreteMeasure grad = gradient_measure(phi, h);
    VariabilityProfile prof;
    prof.s = s;
    const std::size_t n = path.size();
    prof.times.resize(n);
    prof.values.assign(n, 0.0);
    std::vector<char> hit(n, 0);
    parallel_for(n, [&](std::size_t i) {
        prof.times[i] = path.time(i);
        const auto x = path.point(i);
        const bool on_jump = evaluate_representative(phi, x).on_singular_set;
        const double v = grad.size() == 0 ? 0.0 : riesz_potential(grad, 1.0 - s, x);
        prof.values[i] = on_jump ? inf : v;
        hit[i] = on_jump || std::isinf(v);
    });
    for (std::size_t i = 0; i < n; ++i)
        if (hit[i]) prof.singular_hits.push_back(i);
    return prof;
}

namespace detail {

inline double profile_lp(const VariabilityProfile& prof, double p, std::size_t stride) {
    const double dt = (prof.times[1] - prof.times[0]) * static_cast<double>(stride);
    double s = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < prof.values.size(); i += stride) {
        const double v = prof.values[i];
        if (!std::isfinite(v)) continue;
        any = true;
        s += std::pow(v, p);
    }
    if (!any) return inf;
    return std::pow(dt * s, 1.0 / p);
}

}  // namespace detail

// (dt sum of finite values^p)^{1/p}, with the profile subsampled by 4, 2, 1 as the
// refinement ladder; a sustained increase is reported as +inf.
inline EstimateReport variability_norm(const VariabilityProfile& prof, double p) {
    if (!(p >= 1.0)) throw Error("variability norm: need p >= 1");
    if (prof.values.size() < 2) throw Error("variability norm: profile too short");
    std::vector<double> ladder;
    const std::size_t steps = prof.values.size() - 1;
    for (std::size_t stride : {4u, 2u, 1u})
        if (steps % stride == 0 && steps / stride >= 2) ladder.push_back(detail::profile_lp(prof, p, stride));
    EstimateReport r = report_from_ladder(ladder);
    r.resolution["dt"] = prof.times[1] - prof.times[0];
    r.resolution["singular_hits"] = static_cast<double>(prof.singular_hits.size());
    if (r.diverged()) r.note = "not (s,p)-variable at this resolution";
    return r;
}

struct Composition {
    SampledPath path;
    std::vector<bool> flags;
    double singular_fraction = 0.0;
    double time_on_singular_set = 0.0;
    bool ill_posed = false;
};

// Samplewise representative of phi along X. Time on the jump set counts dt for every
// flagged sample of a cadlag path and for every segment with both ends flagged otherwise.
inline Composition compose(const BVFunction& phi, const SampledPath& path) {
    if (phi.dim != path.dim) throw Error("compose: path and function dimensions differ");
    Composition c;
    const std::size_t n = path.size();
    std::vector<double> vals(n);
    c.flags.assign(n, false);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Representative r = evaluate_representative(phi, path.point(i));
        vals[i] = r.value;
        c.flags[i] = r.on_singular_set;
        hits += r.on_singular_set;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool counted = path.interp == Interpolation::cadlag ? c.flags[i] : (c.flags[i] && c.flags[i + 1]);
        if (counted) c.time_on_singular_set += path.dt;
    }
    c.singular_fraction = static_cast<double>(hits) / static_cast<double>(n);
    c.ill_posed = c.time_on_singular_set > 0.0;
    c.path.dim = 1;
    c.path.t0 = path.t0;
    c.path.dt = path.dt;
    c.path.interp = path.interp;
    c.path.x = std::move(vals);
    return c;
}

namespace detail {

inline double max_bound_ratio(const BVFunction& phi, const SampledPath& path, double s, double h,
                              std::size_t pairs, CounterRng& rng) {
    const VariabilityProfile prof = variability_profile(phi, path, s, h);
    std::vector<std::size_t> ok;
    for (std::size_t i = 0; i < prof.values.size(); ++i)
        if (std::isfinite(prof.values[i])) ok.push_back(i);
    std::vector<double> phi_x(path.size());
    for (std::size_t i : ok) phi_x[i] = evaluate_representative(phi, path.point(i)).value;
    double best = 0.0;
    std::size_t admitted = 0;
    const std::size_t attempts = pairs * 8;
    for (std::size_t a = 0; a < attempts && admitted < pairs && ok.size() >= 2; ++a) {
        const std::size_t i = ok[rng.below(ok.size())], j = ok[rng.below(ok.size())];
        const double d = distance(path.point(i), path.point(j));
        if (d == 0.0) continue;
        ++admitted;
        const double rhs = std::pow(d, s) * (prof.values[i] + prof.values[j]);
        const double lhs = std::abs(phi_x[i] - phi_x[j]);
        if (lhs > 0.0) best = std::max(best, lhs / rhs);
    }
    if (admitted == 0) throw Error("bound ratio: no admissible pairs");
    return best;
}

}  // namespace detail

// max over sampled pairs of |phi(X_t) - phi(X_tau)| / (|X_t - X_tau|^s (U(X_t) + U(X_tau)))
// on the path (raw) and on its 2-decimation (ladder[0]); pairs come from a fixed sub-stream.
inline EstimateReport pointwise_bound_ratio(const BVFunction& phi, const SampledPath& path, double s,
                                            std::size_t pair_budget, double h, std::uint64_t seed = 0) {
    std::vector<double> ladder;
    if (path.steps() % 2 == 0 && path.steps() >= 4) {
        CounterRng coarse_rng(seed, 0xB0B0);
        ladder.push_back(detail::max_bound_ratio(phi, decimate(path, 2), s, h, pair_budget, coarse_rng));
    }
    CounterRng rng(seed, 0xB0B1);
    ladder.push_back(detail::max_bound_ratio(phi, path, s, h, pair_budget, rng));
    EstimateReport r = report_from_ladder(ladder, false);
    if (ladder.size() == 2 && ladder[1] > 0.0) r.resolution["relative_change"] = std::abs(ladder[1] - ladder[0]) / ladder[1];
    r.verdict = std::isfinite(r.raw) ? Verdict::finite : Verdict::divergent;
    return r;
}

}  // namespace fracpath
