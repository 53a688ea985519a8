#pragma once

#include <span>
#include <vector>

#include "eoh/constants.hpp"

namespace eoh {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GridError : SolverError {
    using SolverError::SolverError;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// V(z) = -lambda e^2/(4pi eps0 z) + e F z for z > 0, hard wall at z <= 0.
// F >= 0 presses the electron to the surface; F < 0 is an extracting field
// that tilts the potential down and opens a tunneling barrier.
struct PotentialSpec {
    Material material;
    double field = 0.0; // V/nm

    double operator()(double z) const {
        return -material.image_strength() / z +
               units::e_volt_per_nm * field * z;
    }
};

// Uniform grid z_k = k*z_max/n_points, k = 1..n_points-1; both walls are
// Dirichlet points and excluded.
struct Grid {
    double z_max = 300.0; // nm
    int n_points = 6000;
};

struct BoundState {
    int index;               // 1-based level number
    double energy;           // meV
    std::vector<double> psi; // interior samples, sum(psi^2)*dz = 1
    double dz;               // nm
    double z_mean;           // <z>, nm

    double z(std::size_t k) const { return (double(k) + 1.0) * dz; }
};

// Lowest n_levels eigenpairs of the discretized Hamiltonian
// -(hbar^2/2m) d^2/dz^2 + V(z), Dirichlet at z=0 and z=z_max.
// When the far-boundary amplitude of a requested state exceeds 1e-6 of its
// maximum the grid is extended by x1.5 (keeping dz) and re-solved, up to
// three times; failure after that is a GridError.
// F < 0 is rejected (use wkb_rate for extracting fields).
std::vector<BoundState> solve_bound_states(const PotentialSpec& spec,
                                           Grid grid, int n_levels);

// (E2 - E1)/h in GHz.
double transition_frequency(const PotentialSpec& spec, const Grid& grid);

// Trapezoidal <psi_i| z |psi_j>; states must come from the same solve.
double matrix_element_z(const BoundState& a, const BoundState& b);

// Trapezoidal <psi_i| z^2 |psi_j>.
double matrix_element_z2(const BoundState& a, const BoundState& b);

struct SweepRow {
    double field;  // V/nm, echoes the input
    double e1;     // meV
    double e2;     // meV
    double nu01;   // GHz
    double z01;    // nm
};

inline constexpr const char* sweep_csv_header =
    "F_V_per_nm,E1_meV,E2_meV,nu01_GHz,z01_nm";

// One row per field value, in input order. workers > 1 evaluates points
// concurrently; result order is by input index regardless.
std::vector<SweepRow> stark_sweep(const Material& material,
                                  std::span<const double> fields,
                                  const Grid& grid, int workers = 1);

struct BarrierProfile {
    double z_inner = 0.0; // nm
    double z_outer = 0.0; // nm
    double action = 0.0;  // S = int sqrt(2m(V-E)) dz, meV ps
    bool suppressed = false; // E above the barrier maximum
};

// Classical turning points of V(z) = E under an extracting field (F < 0)
// and the WKB action over the barrier.
BarrierProfile barrier_profile(const PotentialSpec& spec, double energy);

// Gamma = nu_a * exp(-2S/hbar), in 1/ps.
double wkb_rate(const PotentialSpec& spec, double energy,
                double attempt_frequency);

// Default prefactor |E|/h in 1/ps.
double default_attempt_frequency(double energy);

// First-order Stark shift of a zero-field level under a (possibly
// extracting) field: E(F) = E(0) + e F <z>.
double quasi_static_energy(double energy_zero_field, double z_mean,
                           double field);

} // namespace eoh
