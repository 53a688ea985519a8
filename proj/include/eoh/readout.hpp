#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eoh/dynamics.hpp"

namespace eoh {

// Linear extracting-field ramp F(t) = -f_peak * t/T applied to all posts.
struct RampSpec {
    double f_peak;            // V/nm, stored positive
    double duration_ns = 1.0; // ns
};

// Zero-field level data needed by the ramp model: the two qubit levels and
// their quasi-static Stark sensitivities <z>.
struct ReadoutContext {
    Material material;
    double e_ground;  // meV, F=0
    double e_excited; // meV, F=0
    double z_ground;  // nm
    double z_excited; // nm
    double efficiency = 1.0; // stage-2 detector efficiency
};

// Solves the bound problem once at F=0 and packages the level data.
ReadoutContext make_readout_context(const Material& material,
                                    const Grid& grid = {});

// P(escape) = 1 - exp(-int Gamma(F(t)) dt) over the ramp, with the level
// energy tracked quasi-statically as E(F) = E(0) + e F <z>.
double escape_probability(const Material& material,
                          double level_energy_zero_field, double z_mean,
                          const RampSpec& ramp);

struct DiscriminatingRamp {
    RampSpec ramp;
    double p_excited; // achieved P(|1> escape)
    double p_ground;  // achieved P(|0> escape)
};

// Bisection over f_peak at fixed 1 ns duration for a ramp with
// P(|1>) >= target_p1 and P(|0>) <= target_p0. Search range
// [1e-7, 1e-3] V/nm; throws SolverError when no window exists.
DiscriminatingRamp discriminating_ramp(const ReadoutContext& ctx,
                                       double target_p1, double target_p0);

struct Stage1Event {
    int qubit;
    double escape_time_ns;
};
struct Stage2Event {
    int qubit;
    bool detected;
};

struct ReadoutResult {
    std::vector<Stage1Event> stage1_events;
    std::vector<Stage2Event> stage2_events;
    std::vector<int> bits;                  // registered 0/1 per qubit
    std::vector<int> measured;              // Born-sampled level per qubit
    std::vector<double> escape_probability; // per qubit, for its measured level
};

// One destructive readout shot: Born-samples each qubit (collapsing the
// joint state qubit-by-qubit in id order, or in `collapse_order` when
// given), samples stage-1 tunneling escapes, then extracts every remaining
// electron in stage 2. A detected electron registers 0, an empty post 1.
ReadoutResult simulate_readout(const State& state, const ReadoutContext& ctx,
                               const RampSpec& ramp, std::uint64_t seed,
                               std::uint64_t shot_index = 0,
                               std::span<const int> collapse_order = {});

// Mis-registration probability for a qubit measured in |1> whose electron
// fails to escape in stage 1 (it is then detected in stage 2 and read as 0).
double misregistration_rate(const ReadoutContext& ctx, const RampSpec& ramp);

struct ShotStats {
    std::vector<std::string> bitstrings;      // one per shot, in shot order
    std::vector<std::size_t> histogram;       // count per basis index
    std::vector<double> misread_one_as_zero;  // per qubit rate over shots
};

ShotStats run_shots(const State& state, const ReadoutContext& ctx,
                    const RampSpec& ramp, std::size_t shots,
                    std::uint64_t seed, int workers = 1);

} // namespace eoh
