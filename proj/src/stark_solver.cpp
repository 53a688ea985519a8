#include "eoh/stark_solver.hpp"

#include <lapacke.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fmt/format.h>
#include <mutex>
#include <thread>

namespace eoh {

namespace {

struct Eigenpairs {
    std::vector<double> energies;          // ascending
    std::vector<std::vector<double>> vecs; // interior samples, normalized
    double dz;
};

Eigenpairs solve_tridiagonal(const PotentialSpec& spec, const Grid& grid,
                             int n_levels) {
    const int n = grid.n_points - 1; // interior points
    const double dz = grid.z_max / grid.n_points;
    const double t = units::hbar2_over_2m / (dz * dz);

    std::vector<double> diag(n), off(n - 1, -t);
    for (int k = 0; k < n; ++k) diag[k] = 2.0 * t + spec((k + 1) * dz);

    std::vector<double> w(n), z(std::size_t(n) * n_levels);
    std::vector<lapack_int> isuppz(2 * std::size_t(n_levels));
    lapack_int m = 0;
    const lapack_int info = LAPACKE_dstevr(
        LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1,
        n_levels, 0.0, &m, w.data(), z.data(), n, isuppz.data());
    if (info != 0 || m < n_levels)
        throw SolverError(fmt::format("tridiagonal eigensolver failed (info={})", info));

    Eigenpairs out;
    out.dz = dz;
    out.energies.assign(w.begin(), w.begin() + n_levels);
    out.vecs.resize(n_levels);
    const double norm = 1.0 / std::sqrt(dz);
    for (int j = 0; j < n_levels; ++j) {
        out.vecs[j].resize(n);
        for (int k = 0; k < n; ++k) out.vecs[j][k] = z[std::size_t(j) * n + k] * norm;
    }
    return out;
}

bool tail_ok(const std::vector<double>& psi) {
    double peak = 0.0;
    for (double v : psi) peak = std::max(peak, std::abs(v));
    return std::abs(psi.back()) <= 1e-6 * peak;
}

} // namespace

std::vector<BoundState> solve_bound_states(const PotentialSpec& spec,
                                           Grid grid, int n_levels) {
    if (spec.field < 0.0)
        throw UsageError("solve_bound_states requires F >= 0: "
                         "use wkb_rate for extracting fields");
    if (n_levels < 1) throw UsageError("n_levels must be >= 1");
    if (grid.z_max <= 0.0 || grid.n_points < 100)
        throw GridError("grid requires z_max > 0 and n_points >= 100");

    Eigenpairs eig;
    bool converged = false;
    for (int attempt = 0; attempt <= 3; ++attempt) {
        eig = solve_tridiagonal(spec, grid, n_levels);
        converged = std::all_of(eig.vecs.begin(), eig.vecs.end(), tail_ok);
        if (converged) break;
        grid.z_max *= 1.5;
        grid.n_points = int(std::lround(grid.n_points * 1.5));
    }
    if (!converged)
        throw GridError(fmt::format(
            "z_max too small: boundary amplitude above 1e-6 of peak after "
            "3 extensions (last z_max = {} nm)", grid.z_max));

    std::vector<BoundState> states(n_levels);
    for (int j = 0; j < n_levels; ++j) {
        BoundState& s = states[j];
        s.index = j + 1;
        s.energy = eig.energies[j];
        s.psi = std::move(eig.vecs[j]);
        s.dz = eig.dz;
        // fix sign convention: psi > 0 near the wall
        if (s.psi.front() < 0.0)
            for (double& v : s.psi) v = -v;
        s.z_mean = matrix_element_z(s, s);
    }
    return states;
}

double matrix_element_z(const BoundState& a, const BoundState& b) {
    if (a.psi.size() != b.psi.size() || a.dz != b.dz)
        throw UsageError("matrix_element_z: states are from different grids");
    // trapezoidal rule; integrand vanishes at both Dirichlet walls
    double acc = 0.0;
    for (std::size_t k = 0; k < a.psi.size(); ++k)
        acc += a.psi[k] * a.z(k) * b.psi[k];
    return acc * a.dz;
}

double matrix_element_z2(const BoundState& a, const BoundState& b) {
    if (a.psi.size() != b.psi.size() || a.dz != b.dz)
        throw UsageError("matrix_element_z2: states are from different grids");
    double acc = 0.0;
    for (std::size_t k = 0; k < a.psi.size(); ++k)
        acc += a.psi[k] * a.z(k) * a.z(k) * b.psi[k];
    return acc * a.dz;
}

double transition_frequency(const PotentialSpec& spec, const Grid& grid) {
    const auto states = solve_bound_states(spec, grid, 2);
    return (states[1].energy - states[0].energy) / units::h_planck *
           units::ps_inv_to_GHz;
}

std::vector<SweepRow> stark_sweep(const Material& material,
                                  std::span<const double> fields,
                                  const Grid& grid, int workers) {
    std::vector<SweepRow> rows(fields.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= fields.size() || failed.load()) return;
            try {
                const PotentialSpec spec{material, fields[i]};
                const auto st = solve_bound_states(spec, grid, 2);
                rows[i] = {fields[i], st[0].energy, st[1].energy,
                           (st[1].energy - st[0].energy) / units::h_planck *
                               units::ps_inv_to_GHz,
                           matrix_element_z(st[0], st[1])};
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                error = fmt::format("sweep point {} (F = {} V/nm): {}", i,
                                    fields[i], e.what());
                failed.store(true);
                return;
            }
        }
    };

    workers = std::clamp(workers, 1, int(std::max<std::size_t>(fields.size(), 1)));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failed.load()) throw SolverError(error);
    return rows;
}

double quasi_static_energy(double energy_zero_field, double z_mean,
                           double field) {
    return energy_zero_field + units::e_volt_per_nm * field * z_mean;
}

BarrierProfile barrier_profile(const PotentialSpec& spec, double energy) {
    if (spec.field >= 0.0)
        throw UsageError("barrier_profile requires an extracting field F < 0");

    const double c = spec.material.image_strength();
    const double f = units::e_volt_per_nm * (-spec.field); // |eF|, meV/nm

    // V(z) = -c/z - f z; maximum -2 sqrt(c f) at z = sqrt(c/f).
    const double v_max = -2.0 * std::sqrt(c * f);
    if (energy >= v_max) return {0.0, 0.0, 0.0, true};

    // Turning points: f z^2 + E z + c = 0.
    const double disc = std::sqrt(energy * energy - 4.0 * f * c);
    BarrierProfile p;
    p.z_inner = (-energy - disc) / (2.0 * f);
    p.z_outer = (-energy + disc) / (2.0 * f);

    // S = int sqrt(2m(V-E)) dz = hbar * int sqrt((V-E)/(hbar^2/2m)) dz.
    // Substitution z = mid - half*cos(theta) absorbs the sqrt turning-point
    // behavior; composite Simpson on the smooth result.
    const double mid = 0.5 * (p.z_inner + p.z_outer);
    const double half = 0.5 * (p.z_outer - p.z_inner);
    const int n = 2048;
    const double dth = units::pi / n;
    auto integrand = [&](double theta) {
        const double z = mid - half * std::cos(theta);
        const double over = std::max(spec(z) - energy, 0.0);
        return std::sqrt(over / units::hbar2_over_2m) * half * std::sin(theta);
    };
    double acc = integrand(0.0) + integrand(units::pi);
    for (int k = 1; k < n; ++k)
        acc += integrand(k * dth) * (k % 2 ? 4.0 : 2.0);
    p.action = units::hbar * acc * dth / 3.0;
    return p;
}

double default_attempt_frequency(double energy) {
    return std::abs(energy) / units::h_planck;
}

double wkb_rate(const PotentialSpec& spec, double energy,
                double attempt_frequency) {
    const BarrierProfile p = barrier_profile(spec, energy);
    return attempt_frequency * std::exp(-2.0 * p.action / units::hbar);
}

} // namespace eoh
