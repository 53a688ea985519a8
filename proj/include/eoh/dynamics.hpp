#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "eoh/qubit_model.hpp"

namespace eoh {

// Pure states are amplitude vectors over the 2^n computational basis;
// qubit 0 is the most significant bit of the basis index.
using State = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

int qubit_count(Eigen::Index dim);

// Rectangular resonant/near-resonant drive on one qubit, in the rotating
// frame at the qubit's bias frequency.
struct RabiPulse {
    std::string qubit;
    double e_rf;     // V/nm
    double duration; // ps
    double detuning; // omega_rf - omega01, rad/ps
};

enum class CouplingMode { rwa, full };

// Rabi angular frequency e E_rf z01 / hbar, rad/ps.
double rabi_frequency(const QubitParams& params, double e_rf);

// Fixed-step RK4 propagator for the two-level rotating-frame Hamiltonian
// H = (hbar delta/2) sigma_z + (hbar Omega/2) sigma_x over the pulse
// duration. step_override > 0 forces the integrator step (test hook).
Eigen::Matrix2cd rabi_propagator(const QubitParams& params,
                                 const RabiPulse& pulse,
                                 double step_override = 0.0);

// Applies the pulse to qubit `qubit_index` of an n-qubit pure state.
State rabi_evolve(const State& state, const QubitParams& params,
                  const RabiPulse& pulse, int qubit_index = 0,
                  double step_override = 0.0);

// Two-qubit evolution under the dipolar coupling: |01><10| element g and,
// in full mode, the counter-rotating |00><11| element g on top of the lab
// frame splittings (omega01, omega01 + delta). rwa mode drops the
// counter-rotating term and keeps only the detuning splitting.
State swap_evolve(const State& state, double g, double delta, double t,
                  CouplingMode mode = CouplingMode::rwa, double omega01 = 0.0,
                  double step_override = 0.0);

Eigen::Matrix4cd swap_propagator(double g, double delta, double t,
                                 CouplingMode mode = CouplingMode::rwa,
                                 double omega01 = 0.0,
                                 double step_override = 0.0);

struct LzResult {
    State state;            // two-qubit state after the sweep
    double p_transfer;      // population moved to the other diabatic state
    double p_stay_diabatic; // complement, compares to exp(-2 pi g^2/(hbar r))
};

// Linear detuning sweep delta(t) = r t across the |01>/|10> resonance,
// integrated from -delta_max to +delta_max with delta_max = window_over_g*g.
// The input state must be concentrated in the {|01>,|10>} subspace.
LzResult lz_sweep(const State& state, double g, double rate,
                  double window_over_g = 1000.0, double step_override = 0.0);

// Lindblad evolution with per-qubit relaxation (rate 1/T1, lowering
// operator) and pure dephasing (rate 1/T2 - 1/(2 T1), sigma_z channel).
// H is in meV over the same basis; t in ps.
DensityMatrix lindblad_evolve(const DensityMatrix& rho,
                              const Eigen::MatrixXcd& hamiltonian,
                              double t1_us, double t2_ms, double t,
                              double step_override = 0.0);

// Single-qubit propagator applied to qubit k of an n-qubit state.
State apply_one_qubit(const State& state, const Eigen::Matrix2cd& u, int k);

// Two-qubit propagator applied to qubits (a, b), a != b, of an n-qubit
// state; the 4x4 is over |q_a q_b>.
State apply_two_qubit(const State& state, const Eigen::Matrix4cd& u, int a,
                      int b);

} // namespace eoh
