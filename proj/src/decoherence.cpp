#include "eoh/decoherence.hpp"

#include <cmath>
#include <limits>

namespace eoh {

double thermal_ripplon_amplitude(const Material& material, double T) {
    if (T < 0.0) throw ConfigError("temperature must be >= 0");
    return std::sqrt(units::k_B * T / material.sigma);
}

double t1_from_ratio(double delta_nu_GHz, double ratio) {
    if (delta_nu_GHz <= 0.0) throw ConfigError("delta_nu must be > 0");
    if (ratio == 0.0) return std::numeric_limits<double>::infinity();
    const double dnu = delta_nu_GHz / units::ps_inv_to_GHz; // 1/ps
    return 1.0 / (dnu * ratio * ratio) * units::ps_to_us;
}

double t1_ripplon(const Material& material, double T, double delta_nu_GHz,
                  double a_B) {
    if (T <= 0.0) throw ConfigError("temperature must be > 0");
    return t1_from_ratio(delta_nu_GHz,
                         thermal_ripplon_amplitude(material, T) / a_B);
}

double lateral_confinement_frequency(double d) {
    if (d <= 0.0) throw ConfigError("pitch must be > 0");
    return std::sqrt(units::e_sq_4pi_eps0 /
                     (units::electron_mass * d * d * d));
}

MagneticConfig magnetic_scales(double d, double B) {
    if (B <= 0.0) throw ConfigError("magnetic field must be > 0");
    MagneticConfig c;
    c.B = B;
    c.omega_c = units::cyclotron_rad_per_ps(B);
    c.Omega1 = lateral_confinement_frequency(d);
    c.omega_p = c.Omega1;
    c.Omega2 = 2.0 * units::pi * c.omega_p * c.omega_p / c.omega_c;
    return c;
}

double ripplon_frequency(const Material& material, double q) {
    return std::sqrt(material.sigma / material.rho) * std::pow(q, 1.5);
}

RipplonKinematics one_ripplon_feasible(const Material& material, double B,
                                       double d) {
    const MagneticConfig mc = magnetic_scales(d, B);
    const double c_r = std::sqrt(material.sigma / material.rho);

    // omega(q*) = omega_c, refined by Newton to the root-finder contract.
    double q = std::pow(mc.omega_c / c_r, 2.0 / 3.0);
    for (int it = 0; it < 8; ++it) {
        const double f = ripplon_frequency(material, q) - mc.omega_c;
        const double df = 1.5 * c_r * std::sqrt(q);
        q -= f / df;
    }

    RipplonKinematics k;
    k.q_star = q;
    k.q_max = 1.0 / units::magnetic_length(B);
    k.feasible =
        mc.omega_c <= ripplon_frequency(material, k.q_max) + mc.Omega2;
    return k;
}

long long operations_budget(double t2_ms, double t_op_ns) {
    if (t2_ms <= 0.0 || t_op_ns <= 0.0)
        throw ConfigError("operations_budget requires positive times");
    return static_cast<long long>(std::floor(t2_ms * 1e6 / t_op_ns));
}

} // namespace eoh
