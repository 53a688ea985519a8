#include "eoh/constants.hpp"

#include <cmath>

namespace eoh {

namespace units {

double magnetic_length(double B) {
    return std::sqrt(hbar / (tesla * B));
}

} // namespace units

namespace {

void derive_hydrogenic(Material& m) {
    const double c = m.image_strength();
    m.rydberg = c * c / (4.0 * units::hbar2_over_2m);
    m.bohr_radius = 2.0 * units::hbar2_over_2m / c;
}

} // namespace

Material material_from_lambda(std::string name, double lambda, double sigma,
                              double rho) {
    Material m;
    m.name = std::move(name);
    m.lambda = lambda;
    m.kappa = (1.0 + 4.0 * lambda) / (1.0 - 4.0 * lambda);
    m.sigma = sigma;
    m.rho = rho;
    derive_hydrogenic(m);
    return m;
}

Material material_params(Isotope iso) {
    // Literature constants: sigma3 = 1.55e-4 N/m, sigma4 = 3.78e-4 N/m,
    // rho3 = 82 kg/m^3, rho4 = 145 kg/m^3 (bulk liquid at low temperature).
    switch (iso) {
    case Isotope::he3:
        // lambda = 0.00521 is the stored primary value for 3He.
        return material_from_lambda("he3", 0.00521,
                                    1.55e-4 * units::sigma_N_per_m,
                                    82.0 * units::rho_kg_per_m3);
    case Isotope::he4: {
        // kappa = 1.0572 is the stored primary value for 4He.
        Material m;
        m.name = "he4";
        m.kappa = 1.0572;
        m.lambda = (m.kappa - 1.0) / (4.0 * (m.kappa + 1.0));
        m.sigma = 3.78e-4 * units::sigma_N_per_m;
        m.rho = 145.0 * units::rho_kg_per_m3;
        derive_hydrogenic(m);
        return m;
    }
    }
    throw ConfigError("invalid isotope");
}

Material material_params(const std::string& name) {
    if (name == "he3") return material_params(Isotope::he3);
    if (name == "he4") return material_params(Isotope::he4);
    throw ConfigError("unknown material '" + name + "': valid names are he3, he4");
}

} // namespace eoh
