// eoh: pulse-level simulator of electrons-on-helium qubits.
// Exit codes: 0 success, 1 usage/configuration, 2 numerical/solver failure,
// 3 input-file errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eoh/decoherence.hpp"
#include "eoh/readout.hpp"
#include "eoh/runner.hpp"

using nlohmann::json;

namespace {

struct CmdError {
    int code;
    std::string message;
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw CmdError{1, "cannot open output file " + out_path};
    f << text;
}

eoh::Grid make_grid(double zmax, int npoints) {
    eoh::Grid g;
    if (zmax > 0.0) g.z_max = zmax;
    if (npoints > 0) g.n_points = npoints;
    return g;
}

// ---------------------------------------------------------------- solve --

int cmd_solve(const std::string& material_name, double field_v_per_cm,
              int levels, double zmax, int npoints,
              const std::string& format, const std::string& out) {
    const auto material = eoh::material_params(material_name);
    const double field = field_v_per_cm * eoh::units::field_V_per_cm;
    const eoh::PotentialSpec spec{material, field};
    const auto grid = make_grid(zmax, npoints);
    const auto states =
        eoh::solve_bound_states(spec, grid, std::max(levels, 2));
    const double nu01 = (states[1].energy - states[0].energy) /
                        eoh::units::h_planck * eoh::units::ps_inv_to_GHz;

    std::ostringstream os;
    if (format == "json") {
        json j{{"material", material.name},
               {"field_V_per_nm", field},
               {"nu01_GHz", nu01},
               {"levels", json::array()}};
        for (const auto& s : states)
            j["levels"].push_back({{"n", s.index},
                                   {"E_meV", s.energy},
                                   {"z_mean_nm", s.z_mean}});
        os << j.dump(2) << '\n';
    } else {
        os << "n,E_meV,z_mean_nm,nu01_GHz\n";
        for (const auto& s : states)
            os << fmt::format("{},{},{},{}\n", s.index, s.energy, s.z_mean,
                              nu01);
    }
    emit(os.str(), out);
    return 0;
}

// ---------------------------------------------------------------- sweep --

int cmd_sweep(const std::string& material_name, double fmin, double fmax,
              int steps, double zmax, int npoints, int workers,
              const std::string& out) {
    if (steps < 1) throw CmdError{1, "--steps must be >= 1"};
    const auto material = eoh::material_params(material_name);
    std::vector<double> fields(steps);
    for (int i = 0; i < steps; ++i)
        fields[i] = (fmin + (steps > 1 ? (fmax - fmin) * i / (steps - 1)
                                       : 0.0)) *
                    eoh::units::field_V_per_cm;
    const auto rows = eoh::stark_sweep(material, fields,
                                       make_grid(zmax, npoints), workers);
    std::ostringstream os;
    os << eoh::sweep_csv_header << '\n';
    for (const auto& r : rows)
        os << fmt::format("{},{},{},{},{}\n", r.field, r.e1, r.e2, r.nu01,
                          r.z01);
    emit(os.str(), out);
    return 0;
}

// ------------------------------------------------------------------ run --

json histogram_json(const eoh::ShotStats& stats, int n_qubits) {
    json h = json::object();
    for (std::size_t idx = 0; idx < stats.histogram.size(); ++idx) {
        if (!stats.histogram[idx]) continue;
        std::string bits(n_qubits, '0');
        for (int q = 0; q < n_qubits; ++q)
            if (idx & (std::size_t(1) << (n_qubits - 1 - q))) bits[q] = '1';
        h[bits] = stats.histogram[idx];
    }
    return h;
}

int cmd_run(const std::string& path, long shots_override, long seed_override,
            int workers, const std::string& trajectory_path,
            const std::string& out) {
    std::ifstream f(path);
    if (!f) throw CmdError{1, "cannot open " + path};
    std::stringstream buf;
    buf << f.rdbuf();

    const auto parsed = eoh::dsl::parse(buf.str());
    if (!parsed.schedule) {
        for (const auto& e : parsed.errors)
            std::cerr << fmt::format("{}:{}:{}: error: {}\n", path, e.line,
                                     e.column, e.message);
        return 3;
    }

    const auto result = eoh::run_schedule(*parsed.schedule);
    if (!trajectory_path.empty())
        emit(eoh::trajectory_csv(result), trajectory_path);

    json report{{"material", result.material.name},
                {"qubits", result.qubit_ids},
                {"events", parsed.schedule->events.size()},
                {"total_time_ps", result.trajectory.back().t}};
    json amps = json::array();
    for (Eigen::Index j = 0; j < result.final_state.size(); ++j)
        amps.push_back({result.final_state(j).real(),
                        result.final_state(j).imag()});
    report["final_state"] = amps;

    if (result.readout) {
        const auto& ro = *result.readout;
        const auto ctx = eoh::make_readout_context(result.material);
        eoh::RampSpec ramp{0.0, ro.duration};
        if (ro.fpeak) {
            ramp.f_peak = *ro.fpeak * eoh::units::field_V_per_cm;
        } else {
            ramp = eoh::discriminating_ramp(ctx, 0.99, 0.01).ramp;
            ramp.duration_ns = ro.duration;
        }
        const std::uint64_t seed =
            seed_override >= 0 ? std::uint64_t(seed_override) : ro.seed;
        const std::size_t shots =
            shots_override > 0 ? std::size_t(shots_override) : ro.shots;
        const auto stats = eoh::run_shots(result.final_state, ctx, ramp,
                                          shots, seed, workers);
        report["readout"] = {
            {"fpeak_V_per_nm", ramp.f_peak},
            {"duration_ns", ramp.duration_ns},
            {"seed", seed},
            {"shots", shots},
            {"bits_histogram",
             histogram_json(stats, int(result.qubit_ids.size()))},
            {"misread_one_as_zero", stats.misread_one_as_zero}};
    }
    emit(report.dump(2) + "\n", out);
    return 0;
}

// -------------------------------------------------------------- readout --

eoh::State parse_state(const std::string& text) {
    // a bitstring ("10") or comma-separated amplitudes ("0,0.707,0.707,0",
    // imaginary parts after ':')
    if (text.find(',') == std::string::npos) {
        for (char c : text)
            if (c != '0' && c != '1')
                throw CmdError{1, "--state must be a bitstring or amplitude list"};
        const int n = int(text.size());
        eoh::State psi = eoh::State::Zero(Eigen::Index(1) << n);
        Eigen::Index idx = 0;
        for (char c : text) idx = (idx << 1) | (c == '1');
        psi(idx) = 1.0;
        return psi;
    }
    std::vector<std::complex<double>> amps;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto colon = part.find(':');
        try {
            const double re = std::stod(part.substr(0, colon));
            const double im = colon == std::string::npos
                                  ? 0.0
                                  : std::stod(part.substr(colon + 1));
            amps.emplace_back(re, im);
        } catch (const std::exception&) {
            throw CmdError{1, "invalid amplitude '" + part + "'"};
        }
    }
    eoh::State psi(Eigen::Index(amps.size()));
    for (Eigen::Index j = 0; j < psi.size(); ++j) psi(j) = amps[j];
    const double norm = psi.norm();
    if (norm == 0.0) throw CmdError{1, "state has zero norm"};
    return psi / norm;
}

int cmd_readout(const std::string& material_name, const std::string& state_text,
                const std::string& fpeak_text, double duration_ns,
                long shots, long seed, double efficiency, int workers,
                const std::string& shot_csv, const std::string& out) {
    const auto material = eoh::material_params(material_name);
    auto ctx = eoh::make_readout_context(material);
    ctx.efficiency = efficiency;
    const auto psi = parse_state(state_text);

    eoh::RampSpec ramp{0.0, duration_ns};
    if (fpeak_text == "auto") {
        ramp = eoh::discriminating_ramp(ctx, 0.99, 0.01).ramp;
        ramp.duration_ns = duration_ns;
    } else {
        try {
            ramp.f_peak = std::stod(fpeak_text) * eoh::units::field_V_per_cm;
        } catch (const std::exception&) {
            throw CmdError{1, "--fpeak must be a field in V/cm or 'auto'"};
        }
    }

    const auto stats = eoh::run_shots(psi, ctx, ramp, std::size_t(shots),
                                      std::uint64_t(seed), workers);
    const int n = eoh::qubit_count(psi.size());

    if (!shot_csv.empty()) {
        std::string csv = "shot,qubit,stage,event\n";
        for (std::size_t s = 0; s < std::size_t(shots); ++s) {
            const auto r = eoh::simulate_readout(psi, ctx, ramp,
                                                 std::uint64_t(seed), s);
            for (const auto& ev : r.stage1_events)
                csv += fmt::format("{},{},1,escape@{}ns\n", s, ev.qubit,
                                   ev.escape_time_ns);
            for (const auto& ev : r.stage2_events)
                csv += fmt::format("{},{},2,{}\n", s, ev.qubit,
                                   ev.detected ? "detected" : "missed");
        }
        emit(csv, shot_csv);
    }

    json report{
        {"material", material.name},
        {"ramp", {{"fpeak_V_per_nm", ramp.f_peak},
                  {"duration_ns", ramp.duration_ns}}},
        {"escape_probability",
         {{"ground", eoh::escape_probability(material, ctx.e_ground,
                                             ctx.z_ground, ramp)},
          {"excited", eoh::escape_probability(material, ctx.e_excited,
                                              ctx.z_excited, ramp)}}},
        {"shots", shots},
        {"seed", seed},
        {"bits_histogram", histogram_json(stats, n)},
        {"misread_one_as_zero", stats.misread_one_as_zero}};
    emit(report.dump(2) + "\n", out);
    return 0;
}

// ---------------------------------------------------------- decoherence --

int cmd_decoherence(const std::string& material_name, double temperature,
                    double bfield, double pitch, double t2_ms, double top_ns,
                    const std::string& out) {
    const auto material = eoh::material_params(material_name);
    const double delta_nu =
        eoh::transition_frequency(eoh::PotentialSpec{material, 0.0}, {});
    const double delta_t =
        eoh::thermal_ripplon_amplitude(material, temperature);
    const double t1 = eoh::t1_ripplon(material, temperature, delta_nu,
                                      material.bohr_radius);
    const auto mc = eoh::magnetic_scales(pitch, bfield);
    const auto rip = eoh::one_ripplon_feasible(material, bfield, pitch);

    const json j{
        {"delta_T_nm", delta_t},
        {"T1_us", t1},
        {"Omega1_K",
         eoh::units::hbar * mc.Omega1 / eoh::units::k_B},
        {"omega_c_rad_s",
         mc.omega_c * eoh::units::rad_per_ps_to_rad_per_s},
        {"Omega2_K",
         eoh::units::hbar * mc.Omega2 / eoh::units::k_B},
        {"one_ripplon_feasible", rip.feasible},
        {"ops_budget", eoh::operations_budget(t2_ms, top_ns)}};
    emit(j.dump(2) + "\n", out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pulse-level simulator of electrons-on-helium qubits"};
    app.require_subcommand(1);

    std::string material = "he3", format = "csv", out, fpeak = "auto";
    std::string state = "0", trajectory, shot_csv, input;
    double field = 0.0, zmax = 0.0, fmin = 0.0, fmax = 200.0;
    double duration_ns = 1.0, efficiency = 1.0;
    double temperature = 0.010, bfield = 1.5, pitch = 500.0;
    double t2_ms = 100.0, top_ns = 1.0;
    int levels = 2, npoints = 0, steps = 10, workers = 1;
    long shots = 1000, seed = 0, run_shots_n = 0, run_seed = -1;

    auto* solve = app.add_subcommand("solve", "Bound states at one field");
    solve->add_option("--material", material, "he3 or he4");
    solve->add_option("--field", field, "pressing field, V/cm");
    solve->add_option("--levels", levels, "number of levels");
    solve->add_option("--zmax", zmax, "grid extent, nm");
    solve->add_option("--npoints", npoints, "grid points");
    solve->add_option("--format", format, "csv or json");
    solve->add_option("--out", out, "output file (default stdout)");

    auto* sweep = app.add_subcommand("sweep", "Stark sweep CSV");
    sweep->add_option("--material", material, "he3 or he4");
    sweep->add_option("--fmin", fmin, "start field, V/cm");
    sweep->add_option("--fmax", fmax, "end field, V/cm");
    sweep->add_option("--steps", steps, "number of sweep points");
    sweep->add_option("--zmax", zmax, "grid extent, nm");
    sweep->add_option("--npoints", npoints, "grid points");
    sweep->add_option("--workers", workers, "concurrent sweep workers");
    sweep->add_option("--out", out, "output file (default stdout)");

    auto* run = app.add_subcommand("run", "Execute a .eoh experiment file");
    run->add_option("file", input, "experiment file")->required();
    run->add_option("--shots", run_shots_n, "override scheduled shot count");
    run->add_option("--seed", run_seed, "override scheduled seed");
    run->add_option("--workers", workers, "concurrent shot workers");
    run->add_option("--trajectory", trajectory, "write trajectory CSV here");
    run->add_option("--out", out, "output file (default stdout)");

    auto* readout = app.add_subcommand("readout", "Sample tunneling readout");
    readout->add_option("--material", material, "he3 or he4");
    readout->add_option("--state", state,
                        "bitstring or comma-separated amplitudes");
    readout->add_option("--fpeak", fpeak, "ramp peak in V/cm, or 'auto'");
    readout->add_option("--duration", duration_ns, "ramp duration, ns");
    readout->add_option("--shots", shots, "number of shots");
    readout->add_option("--seed", seed, "RNG seed");
    readout->add_option("--efficiency", efficiency, "stage-2 detector efficiency");
    readout->add_option("--workers", workers, "concurrent shot workers");
    readout->add_option("--shot-csv", shot_csv, "per-shot event CSV path");
    readout->add_option("--out", out, "output file (default stdout)");

    auto* deco = app.add_subcommand("decoherence", "Decoherence report");
    deco->add_option("--material", material, "he3 or he4");
    deco->add_option("--temperature", temperature, "K");
    deco->add_option("--bfield", bfield, "Tesla");
    deco->add_option("--pitch", pitch, "electron separation, nm");
    deco->add_option("--t2", t2_ms, "dephasing time, ms");
    deco->add_option("--top", top_ns, "single-operation time, ns");
    deco->add_option("--out", out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed())
            return cmd_solve(material, field, levels, zmax, npoints, format,
                             out);
        if (sweep->parsed())
            return cmd_sweep(material, fmin, fmax, steps, zmax, npoints,
                             workers, out);
        if (run->parsed())
            return cmd_run(input, run_shots_n, run_seed, workers, trajectory,
                           out);
        if (readout->parsed())
            return cmd_readout(material, state, fpeak, duration_ns, shots,
                               seed, efficiency, workers, shot_csv, out);
        if (deco->parsed())
            return cmd_decoherence(material, temperature, bfield, pitch,
                                   t2_ms, top_ns, out);
    } catch (const CmdError& e) {
        std::cerr << "error: " << e.message << '\n';
        return e.code;
    } catch (const eoh::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const eoh::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const eoh::SolverError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
