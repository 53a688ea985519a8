#pragma once

#include "eoh/constants.hpp"

namespace eoh {

// Energy scales of the lateral problem in a magnetic field.
struct MagneticConfig {
    double B;       // Tesla
    double omega_c; // cyclotron eB/m, rad/ps
    double Omega1;  // lateral confinement, rad/ps
    double Omega2;  // plasma bandwidth in field, rad/ps
    double omega_p; // plasma scale, rad/ps
};

struct RipplonKinematics {
    bool feasible;
    double q_star; // ripplon wavevector with omega(q*) = omega_c, 1/nm
    double q_max;  // momentum cutoff 1/l_B, 1/nm
};

// rms thermal surface fluctuation sqrt(k_B T / sigma), nm.
double thermal_ripplon_amplitude(const Material& material, double T);

// T1 = [dnu * ratio^2]^-1 in microseconds, ratio = delta_T/a_B.
// Returns +infinity for ratio = 0 (the explicit no-relaxation case).
double t1_from_ratio(double delta_nu_GHz, double ratio);

// Composes the thermal amplitude with the ratio formula.
double t1_ripplon(const Material& material, double T, double delta_nu_GHz,
                  double a_B);

// Omega1 = sqrt(e^2/(4pi_eps0 m d^3)), rad/ps.
double lateral_confinement_frequency(double d);

// omega_p is identified with Omega1(d): the one in-model frequency scale of
// the qubit array, standing in for the zone-boundary plasmon.
MagneticConfig magnetic_scales(double d, double B);

// Capillary-wave kinematics for a one-ripplon inter-Landau-level transition:
// the ripplon carrying the cyclotron energy has wavevector q*, while the
// electron can exchange momentum up to q_max = 1/l_B with the plasma band
// Omega2 available to absorb the energy mismatch. Feasible while
// omega_c <= omega(q_max) + Omega2.
RipplonKinematics one_ripplon_feasible(const Material& material, double B,
                                       double d = 500.0);

// floor(T2 / t_op).
long long operations_budget(double t2_ms, double t_op_ns);

// Ripplon dispersion omega(q) = sqrt(sigma/rho) q^{3/2}, rad/ps.
double ripplon_frequency(const Material& material, double q);

} // namespace eoh
