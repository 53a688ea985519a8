#include "eoh/readout.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "eoh/rng.hpp"

namespace eoh {

namespace {

void check_ramp(const RampSpec& ramp) {
    if (ramp.f_peak < 0.0) throw UsageError("ramp f_peak must be >= 0");
    if (ramp.duration_ns <= 0.0) throw UsageError("ramp duration must be > 0");
}

double rate_at(const Material& material, double e0, double z_mean,
               double field_mag) {
    if (field_mag <= 0.0) return 0.0;
    const PotentialSpec spec{material, -field_mag};
    const double e = quasi_static_energy(e0, z_mean, -field_mag);
    return wkb_rate(spec, e, default_attempt_frequency(e));
}

// Cumulative hazard H(t_k) = int_0^{t_k} Gamma(F(t)) dt on a uniform time
// grid over the ramp (trapezoidal).
struct Hazard {
    std::vector<double> cum; // size n+1, cum[0] = 0
    double dt_ps;

    double total() const { return cum.back(); }
    double escape_prob() const { return -std::expm1(-total()); }

    // Inverse of H for sampling the escape time; target <= total().
    double invert_ns(double target) const {
        const auto it = std::lower_bound(cum.begin(), cum.end(), target);
        const std::size_t k = std::size_t(it - cum.begin());
        if (k == 0) return 0.0;
        const double h0 = cum[k - 1], h1 = cum[k];
        const double frac = h1 > h0 ? (target - h0) / (h1 - h0) : 0.0;
        return (double(k - 1) + frac) * dt_ps * 1e-3;
    }
};

Hazard build_hazard(const Material& material, double e0, double z_mean,
                    const RampSpec& ramp, int n = 256) {
    Hazard h;
    const double t_total = ramp.duration_ns * 1000.0; // ps
    h.dt_ps = t_total / n;
    h.cum.resize(n + 1);
    h.cum[0] = 0.0;
    double prev = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double f = ramp.f_peak * double(k) / n;
        const double g = rate_at(material, e0, z_mean, f);
        h.cum[k] = h.cum[k - 1] + 0.5 * (prev + g) * h.dt_ps;
        prev = g;
    }
    return h;
}

struct RampModel {
    Hazard ground, excited;
    double p_ground, p_excited;
};

RampModel build_model(const ReadoutContext& ctx, const RampSpec& ramp) {
    check_ramp(ramp);
    RampModel m;
    m.ground = build_hazard(ctx.material, ctx.e_ground, ctx.z_ground, ramp);
    m.excited = build_hazard(ctx.material, ctx.e_excited, ctx.z_excited, ramp);
    m.p_ground = m.ground.escape_prob();
    m.p_excited = m.excited.escape_prob();
    return m;
}

ReadoutResult run_one(const State& state, const ReadoutContext& ctx,
                      const RampModel& model, std::uint64_t seed,
                      std::uint64_t shot, std::span<const int> order) {
    const int n = qubit_count(state.size());
    std::vector<int> ids(n);
    if (order.empty()) {
        std::iota(ids.begin(), ids.end(), 0);
    } else {
        if (int(order.size()) != n)
            throw UsageError("collapse order must list every qubit once");
        ids.assign(order.begin(), order.end());
    }

    ReadoutResult res;
    res.bits.assign(n, 0);
    res.measured.assign(n, 0);
    res.escape_probability.assign(n, 0.0);

    // Born sampling, collapsing the joint state one qubit at a time.
    State psi = state;
    for (const int q : ids) {
        const Eigen::Index bit = Eigen::Index(1) << (n - 1 - q);
        double p1 = 0.0;
        for (Eigen::Index j = 0; j < psi.size(); ++j)
            if (j & bit) p1 += std::norm(psi(j));
        const int level = rng::uniform(seed, shot, q, 0) < p1 ? 1 : 0;
        res.measured[q] = level;
        const double p_keep = level ? p1 : 1.0 - p1;
        const double scale = p_keep > 0.0 ? 1.0 / std::sqrt(p_keep) : 0.0;
        for (Eigen::Index j = 0; j < psi.size(); ++j)
            psi(j) = (((j & bit) != 0) == (level != 0)) ? psi(j) * scale
                                                       : 0.0;
    }

    // Stage 1: global ramp; each electron escapes with its level's WKB
    // probability.
    std::vector<bool> escaped(n, false);
    for (int q = 0; q < n; ++q) {
        const Hazard& hz = res.measured[q] ? model.excited : model.ground;
        res.escape_probability[q] =
            res.measured[q] ? model.p_excited : model.p_ground;
        const double u = rng::uniform(seed, shot, q, 1);
        const double target = -std::log1p(-u);
        if (target < hz.total()) {
            escaped[q] = true;
            res.stage1_events.push_back({q, hz.invert_ns(target)});
        }
    }

    // Stage 2: per-post extraction of every remaining electron; detected
    // electrons register 0, empty posts 1.
    for (int q = 0; q < n; ++q) {
        if (escaped[q]) {
            res.bits[q] = 1;
            continue;
        }
        const bool detected =
            rng::uniform(seed, shot, q, 2) < ctx.efficiency;
        res.stage2_events.push_back({q, detected});
        res.bits[q] = detected ? 0 : 1;
    }
    return res;
}

} // namespace

ReadoutContext make_readout_context(const Material& material,
                                    const Grid& grid) {
    const auto st = solve_bound_states(PotentialSpec{material, 0.0}, grid, 2);
    return {material, st[0].energy, st[1].energy, st[0].z_mean, st[1].z_mean};
}

double escape_probability(const Material& material,
                          double level_energy_zero_field, double z_mean,
                          const RampSpec& ramp) {
    check_ramp(ramp);
    return build_hazard(material, level_energy_zero_field, z_mean, ramp)
        .escape_prob();
}

DiscriminatingRamp discriminating_ramp(const ReadoutContext& ctx,
                                       double target_p1, double target_p0) {
    if (!(0.0 < target_p0 && target_p0 < target_p1 && target_p1 < 1.0))
        throw UsageError("require 0 < target_p0 < target_p1 < 1");

    constexpr double f_lo = 1e-7, f_hi = 1e-3;
    auto p1_at = [&](double f) {
        return escape_probability(ctx.material, ctx.e_excited, ctx.z_excited,
                                  {f, 1.0});
    };
    auto p0_at = [&](double f) {
        return escape_probability(ctx.material, ctx.e_ground, ctx.z_ground,
                                  {f, 1.0});
    };
    auto probs = [&](double f) { return std::pair{p1_at(f), p0_at(f)}; };

    // The quasi-static escape curves rise steeply with f_peak but are not
    // globally monotone (at very large fields the frozen-<z> Stark shift
    // drags the level back under the barrier), so locate the first rising
    // crossing on a geometric grid and then bisect inside that bracket.
    auto first_crossing = [&](auto crossed) -> std::optional<double> {
        constexpr int per_decade = 8;
        double prev = f_lo;
        if (crossed(prev)) return prev;
        for (int k = 1;; ++k) {
            const double f =
                f_lo * std::pow(10.0, double(k) / per_decade);
            if (f > f_hi * 1.0000001) return std::nullopt;
            if (crossed(f)) {
                double lo = prev, hi = f; // crossed(lo)=false, crossed(hi)=true
                for (int it = 0; it < 50; ++it) {
                    const double mid = std::sqrt(lo * hi);
                    (crossed(mid) ? hi : lo) = mid;
                }
                return hi;
            }
            prev = f;
        }
    };

    // smallest field emptying |1>, largest field still keeping |0>
    const auto f_min =
        first_crossing([&](double f) { return p1_at(f) >= target_p1; });
    const auto leak =
        first_crossing([&](double f) { return p0_at(f) > target_p0; });
    const double f_max = leak ? *leak * (1.0 - 1e-9) : f_hi;

    if (!f_min || *f_min > f_max) {
        const auto [p1, p0] = probs(f_min ? *f_min : f_hi);
        throw SolverError(
            "no discrimination window in [1e-7, 1e-3] V/nm: best ramp gives "
            "P1 = " + std::to_string(p1) + ", P0 = " + std::to_string(p0));
    }
    const double f = std::sqrt(*f_min * f_max);
    const auto [p1, p0] = probs(f);
    if (!(p1 >= target_p1 && p0 <= target_p0))
        throw SolverError(
            "no discrimination window in [1e-7, 1e-3] V/nm: best ramp gives "
            "P1 = " + std::to_string(p1) + ", P0 = " + std::to_string(p0));
    return {RampSpec{f, 1.0}, p1, p0};
}

double misregistration_rate(const ReadoutContext& ctx, const RampSpec& ramp) {
    return 1.0 -
           escape_probability(ctx.material, ctx.e_excited, ctx.z_excited, ramp);
}

ReadoutResult simulate_readout(const State& state, const ReadoutContext& ctx,
                               const RampSpec& ramp, std::uint64_t seed,
                               std::uint64_t shot_index,
                               std::span<const int> collapse_order) {
    if (std::abs(state.squaredNorm() - 1.0) > 1e-9)
        throw UsageError("state is not normalized");
    return run_one(state, ctx, build_model(ctx, ramp), seed, shot_index,
                   collapse_order);
}

ShotStats run_shots(const State& state, const ReadoutContext& ctx,
                    const RampSpec& ramp, std::size_t shots,
                    std::uint64_t seed, int workers) {
    const int n = qubit_count(state.size());
    const RampModel model = build_model(ctx, ramp);

    std::vector<ReadoutResult> results(shots);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t s = next.fetch_add(1);
            if (s >= shots) return;
            results[s] = run_one(state, ctx, model, seed, s, {});
        }
    };
    workers = std::clamp<int>(workers, 1, int(std::max<std::size_t>(shots, 1)));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    ShotStats stats;
    stats.bitstrings.reserve(shots);
    stats.histogram.assign(std::size_t(1) << n, 0);
    std::vector<std::size_t> ones(n, 0), misread(n, 0);
    for (const auto& r : results) {
        std::string bits(n, '0');
        std::size_t idx = 0;
        for (int q = 0; q < n; ++q) {
            bits[q] = r.bits[q] ? '1' : '0';
            idx = (idx << 1) | std::size_t(r.bits[q]);
            if (r.measured[q]) {
                ++ones[q];
                if (!r.bits[q]) ++misread[q];
            }
        }
        ++stats.histogram[idx];
        stats.bitstrings.push_back(std::move(bits));
    }
    stats.misread_one_as_zero.assign(n, 0.0);
    for (int q = 0; q < n; ++q)
        if (ones[q])
            stats.misread_one_as_zero[q] =
                double(misread[q]) / double(ones[q]);
    return stats;
}

} // namespace eoh
