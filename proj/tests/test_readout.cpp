#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "eoh/readout.hpp"

using namespace eoh;

namespace {

const Material he3 = material_params("he3");

const ReadoutContext& context() {
    static const ReadoutContext ctx = make_readout_context(he3);
    return ctx;
}

// shared across tests: computing the ramp involves many solver calls
const DiscriminatingRamp& default_ramp() {
    static const DiscriminatingRamp dr =
        discriminating_ramp(context(), 0.99, 1e-4);
    return dr;
}

State bell_01_10() {
    State s = State::Zero(4);
    s(1) = 1.0 / std::sqrt(2.0);
    s(2) = 1.0 / std::sqrt(2.0);
    return s;
}

// log-bisect a ramp whose excited-state escape probability is ~0.5
RampSpec half_escape_ramp(const ReadoutContext& ctx) {
    double lo = 1e-7, hi = 1e-3;
    for (int i = 0; i < 60; ++i) {
        const double mid = std::sqrt(lo * hi);
        const double p = escape_probability(ctx.material, ctx.e_excited,
                                            ctx.z_excited, {mid, 1.0});
        (p < 0.5 ? lo : hi) = mid;
    }
    return {std::sqrt(lo * hi), 1.0};
}

} // namespace

TEST_CASE("escape probability basics") {
    const auto& ctx = context();
    CHECK(escape_probability(he3, ctx.e_excited, ctx.z_excited, {0.0, 1.0}) ==
          0.0);

    double prev = 0.0;
    for (const double f : {5e-7, 1e-6, 2e-6, 4e-6, 8e-6}) {
        const double p =
            escape_probability(he3, ctx.e_excited, ctx.z_excited, {f, 1.0});
        CHECK(p >= prev);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        prev = p;
    }
    CHECK(prev > 0.99); // strong ramps always empty the excited level

    SUBCASE("excited level escapes far more readily than the ground level") {
        const double f = 2e-6;
        const double p1 =
            escape_probability(he3, ctx.e_excited, ctx.z_excited, {f, 1.0});
        const double p0 =
            escape_probability(he3, ctx.e_ground, ctx.z_ground, {f, 1.0});
        CHECK(p1 > 1e3 * p0);
    }

    SUBCASE("bad ramps") {
        CHECK_THROWS_AS(
            escape_probability(he3, ctx.e_excited, ctx.z_excited, {-1e-6, 1.0}),
            UsageError);
        CHECK_THROWS_AS(
            escape_probability(he3, ctx.e_excited, ctx.z_excited, {1e-6, 0.0}),
            UsageError);
    }
}

TEST_CASE("discriminating ramp meets both targets") {
    const auto& ctx = context();
    const auto& dr = default_ramp();
    CHECK(dr.p_excited >= 0.99);
    CHECK(dr.p_ground <= 1e-4);
    CHECK(dr.ramp.f_peak > 1e-7);
    CHECK(dr.ramp.f_peak < 1e-3);

    SUBCASE("reported probabilities re-evaluate identically") {
        const double p1 = escape_probability(he3, ctx.e_excited, ctx.z_excited,
                                             dr.ramp);
        const double p0 = escape_probability(he3, ctx.e_ground, ctx.z_ground,
                                             dr.ramp);
        CHECK(std::abs(p1 - dr.p_excited) <= 1e-12 * dr.p_excited);
        CHECK(std::abs(p0 - dr.p_ground) <= 1e-12 * std::max(dr.p_ground, 1e-300));
    }

    SUBCASE("invalid targets") {
        CHECK_THROWS_AS(discriminating_ramp(ctx, 1e-4, 0.99), UsageError);
        CHECK_THROWS_AS(discriminating_ramp(ctx, 0.99, 0.0), UsageError);
        CHECK_THROWS_AS(discriminating_ramp(ctx, 1.0, 1e-4), UsageError);
    }

    SUBCASE("degenerate levels admit no window") {
        ReadoutContext same = ctx;
        same.e_excited = same.e_ground;
        same.z_excited = same.z_ground;
        CHECK_THROWS_AS(discriminating_ramp(same, 0.99, 1e-4), SolverError);
    }
}

TEST_CASE("single shots are deterministic in (seed, shot)") {
    const auto& ctx = context();
    const auto& dr = default_ramp();
    const State psi = bell_01_10();
    const auto a = simulate_readout(psi, ctx, dr.ramp, 42, 7);
    const auto b = simulate_readout(psi, ctx, dr.ramp, 42, 7);
    CHECK(a.bits == b.bits);
    CHECK(a.measured == b.measured);
    REQUIRE(a.stage1_events.size() == b.stage1_events.size());
    for (std::size_t i = 0; i < a.stage1_events.size(); ++i)
        CHECK(a.stage1_events[i].escape_time_ns ==
              b.stage1_events[i].escape_time_ns);

    // the entangled pair collapses consistently
    CHECK(a.measured[0] + a.measured[1] == 1);

    SUBCASE("different seeds decorrelate") {
        int diff = 0;
        for (std::uint64_t s = 0; s < 64; ++s) {
            const auto x = simulate_readout(psi, ctx, dr.ramp, 1, s);
            const auto y = simulate_readout(psi, ctx, dr.ramp, 2, s);
            if (x.measured != y.measured) ++diff;
        }
        CHECK(diff > 10);
    }
}

TEST_CASE("Born statistics of the entangled pair") {
    const auto& ctx = context();
    const auto& dr = default_ramp();
    const std::size_t shots = 10000;
    const auto stats = run_shots(bell_01_10(), ctx, dr.ramp, shots, 1234, 4);
    REQUIRE(stats.histogram.size() == 4);
    const double f01 = double(stats.histogram[1]) / double(shots);
    const double f10 = double(stats.histogram[2]) / double(shots);
    CHECK(f01 == doctest::Approx(0.5).epsilon(0.04)); // 4 sigma at 1e4 shots
    CHECK(f10 == doctest::Approx(0.5).epsilon(0.04));
    // |11> needs a ground-state escape: bounded by the misread rates
    CHECK(double(stats.histogram[3]) / double(shots) < 0.02);
}

TEST_CASE("shot streams are worker-count invariant") {
    const auto& ctx = context();
    const auto& dr = default_ramp();
    const auto a = run_shots(bell_01_10(), ctx, dr.ramp, 500, 9, 1);
    const auto b = run_shots(bell_01_10(), ctx, dr.ramp, 500, 9, 8);
    CHECK(a.bitstrings == b.bitstrings);
    CHECK(a.histogram == b.histogram);
}

TEST_CASE("collapse order does not bias the statistics") {
    const auto& ctx = context();
    const auto& dr = default_ramp();
    const State psi = bell_01_10();
    const std::array<int, 2> forward{0, 1}, backward{1, 0};
    int ones_fwd = 0, ones_bwd = 0;
    const int shots = 2000;
    for (int s = 0; s < shots; ++s) {
        ones_fwd += simulate_readout(psi, ctx, dr.ramp, 5, s, forward)
                        .measured[0];
        ones_bwd += simulate_readout(psi, ctx, dr.ramp, 6, s, backward)
                        .measured[0];
    }
    const double diff =
        std::abs(ones_fwd - ones_bwd) / double(shots);
    CHECK(diff < 0.06); // ~4 sigma for p = 1/2
    CHECK_THROWS_AS(
        simulate_readout(psi, ctx, dr.ramp, 0, 0, std::array<int, 1>{0}),
        UsageError);
}

TEST_CASE("misregistration") {
    const auto& ctx = context();
    const RampSpec weak = half_escape_ramp(ctx);
    const double rate = misregistration_rate(ctx, weak);
    CHECK(rate == doctest::Approx(0.5).epsilon(1e-6)); // by construction

    // empirical rate over shots on |1>
    State one = State::Zero(2);
    one(1) = 1.0;
    const auto stats = run_shots(one, ctx, weak, 10000, 77, 4);
    CHECK(stats.misread_one_as_zero[0] ==
          doctest::Approx(rate).epsilon(0.08)); // 4 sigma

    // a discriminating ramp keeps it below the complement of its target
    const auto& dr = default_ramp();
    CHECK(misregistration_rate(ctx, dr.ramp) <= 0.01);
}

TEST_CASE("stage-2 detector efficiency") {
    auto ctx = context();
    ctx.efficiency = 0.0; // blind detector: every post reads empty
    State zero = State::Zero(2);
    zero(0) = 1.0;
    const auto r = simulate_readout(zero, ctx, {0.0, 1.0}, 3);
    CHECK(r.stage1_events.empty());
    REQUIRE(r.stage2_events.size() == 1);
    CHECK(!r.stage2_events[0].detected);
    CHECK(r.bits[0] == 1); // |0> misread as 1 by the dead detector

    ctx.efficiency = 1.0;
    const auto r2 = simulate_readout(zero, ctx, {0.0, 1.0}, 3);
    CHECK(r2.bits[0] == 0);
}

TEST_CASE("normalization is required") {
    const auto& ctx = context();
    State bad = State::Zero(2);
    bad(0) = 0.5;
    CHECK_THROWS_AS(simulate_readout(bad, ctx, {1e-6, 1.0}, 0), UsageError);
}
