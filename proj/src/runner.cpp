#include "eoh/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace eoh {

namespace {

constexpr double GHz_to_rad_per_ps = 2.0 * units::pi * 1e-3;

struct Context {
    Material material;
    const dsl::Schedule& sched;
    Grid grid;
    std::map<std::string, int> index;          // qubit id -> position
    std::map<double, QubitParams> params_by_bias; // bias V/nm -> params

    const QubitParams& params(double bias_v_per_nm, const std::string& id) {
        auto it = params_by_bias.find(bias_v_per_nm);
        if (it == params_by_bias.end())
            it = params_by_bias
                     .emplace(bias_v_per_nm,
                              build_qubit(material, bias_v_per_nm, grid, id))
                     .first;
        return it->second;
    }

    const QubitParams& qubit(const std::string& id) {
        const auto decl = std::ranges::find_if(
            sched.qubits, [&](const auto& q) { return q.id == id; });
        if (decl == sched.qubits.end())
            throw UsageError("schedule references undefined qubit '" + id + "'");
        return params(decl->bias * units::field_V_per_cm, id);
    }
};

struct EventRunner {
    Context& ctx;
    State& psi;
    double& t;
    std::optional<dsl::ReadoutEvent>& readout;

    CouplingMode mode() const {
        return ctx.sched.header.mode == "full" ? CouplingMode::full
                                               : CouplingMode::rwa;
    }

    void operator()(const dsl::PulseEvent& e) {
        const QubitParams& q = ctx.qubit(e.qubit);
        const RabiPulse pulse{e.qubit, e.erf * units::field_V_per_cm,
                              e.duration, e.detuning * GHz_to_rad_per_ps};
        psi = rabi_evolve(psi, q, pulse, ctx.index.at(e.qubit));
        t += e.duration;
    }

    void operator()(const dsl::StarkEvent& e) {
        // A temporary detuning pulse: relative to the rotating frame at the
        // bias frequency, |1> accumulates the differential Stark phase.
        const QubitParams& at_bias = ctx.qubit(e.qubit);
        const QubitParams& shifted =
            ctx.params(e.field * units::field_V_per_cm, e.qubit);
        const double phase =
            (shifted.omega01 - at_bias.omega01) * e.duration;
        Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
        u(1, 1) = std::exp(std::complex<double>(0.0, -phase));
        psi = apply_one_qubit(psi, u, ctx.index.at(e.qubit));
        t += e.duration;
    }

    void operator()(const dsl::SwapEvent& e) {
        const QubitParams& qa = ctx.qubit(e.a);
        const QubitParams& qb = ctx.qubit(e.b);
        const double g =
            coupling_strength(qa, qb, ctx.sched.header.pitch);
        const double duration =
            e.duration ? *e.duration : units::pi * units::hbar / (2.0 * g);
        const double delta = qb.omega01 - qa.omega01;
        const auto u = swap_propagator(g, delta, duration, mode(), qa.omega01);
        psi = apply_two_qubit(psi, u, ctx.index.at(e.a), ctx.index.at(e.b));
        t += duration;
    }

    void operator()(const dsl::SweepEvent& e) {
        if (psi.size() != 4)
            throw UsageError("sweep requires a two-qubit schedule");
        const QubitParams& qa = ctx.qubit(e.a);
        const QubitParams& qb = ctx.qubit(e.b);
        const double g =
            coupling_strength(qa, qb, ctx.sched.header.pitch);
        const double rate = e.rate * 1e-6 * units::h_planck; // meV/ps
        const double delta_max = std::abs(e.span) * 1e-3 * units::h_planck;
        const auto res = lz_sweep(psi, g, rate, delta_max / g);
        psi = res.state;
        t += 2.0 * delta_max / std::abs(rate);
    }

    void operator()(const dsl::WaitEvent& e) { t += e.duration; }

    void operator()(const dsl::ReadoutEvent& e) { readout = e; }
};

} // namespace

RunResult run_schedule(const dsl::Schedule& schedule, const Grid& grid) {
    if (schedule.qubits.empty())
        throw UsageError("schedule declares no qubits");

    RunResult res;
    res.material = material_params(schedule.header.material);
    res.header = schedule.header;

    Context ctx{res.material, schedule, grid, {}, {}};
    for (const auto& q : schedule.qubits) {
        res.qubit_ids.push_back(q.id);
        ctx.index.emplace(q.id, int(ctx.index.size()));
    }

    const int n = int(schedule.qubits.size());
    State psi = State::Zero(Eigen::Index(1) << n);
    psi(0) = 1.0;
    double t = 0.0;
    res.trajectory.push_back({t, psi});

    EventRunner runner{ctx, psi, t, res.readout};
    for (const auto& ev : schedule.events) {
        std::visit(runner, ev);
        res.trajectory.push_back({t, psi});
    }
    res.final_state = psi;
    return res;
}

std::string trajectory_csv(const RunResult& result) {
    std::string out = "t_ps,basis_index,re_amp,im_amp\n";
    for (const auto& snap : result.trajectory)
        for (Eigen::Index j = 0; j < snap.state.size(); ++j)
            out += fmt::format("{},{},{},{}\n", snap.t, j,
                               snap.state(j).real(), snap.state(j).imag());
    return out;
}

} // namespace eoh
