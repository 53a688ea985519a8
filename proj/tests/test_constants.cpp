#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eoh/constants.hpp"

using namespace eoh;

TEST_CASE("he3 parameters") {
    const auto m = material_params("he3");
    CHECK(m.lambda == doctest::Approx(0.00521));
    CHECK(m.rydberg == doctest::Approx(0.369).epsilon(0.01));
    CHECK(m.bohr_radius == doctest::Approx(10.16).epsilon(0.005));
    // back-solved dielectric constant
    CHECK(m.kappa == doctest::Approx(1.0426).epsilon(1e-3));
}

TEST_CASE("he4 parameters from stored kappa") {
    const auto m = material_params("he4");
    CHECK(m.kappa == doctest::Approx(1.0572));
    CHECK(m.lambda == doctest::Approx(0.00695).epsilon(1e-3));
    // independent hand evaluation of the closed forms:
    //   R = (lambda e^2/4pi_eps0)^2/(4 hbar^2/2m), a_B = 2(hbar^2/2m)/(...)
    const double c = m.lambda * units::e_sq_4pi_eps0;
    CHECK(m.rydberg == doctest::Approx(c * c / (4.0 * units::hbar2_over_2m)));
    CHECK(m.rydberg == doctest::Approx(0.657).epsilon(0.005));
    CHECK(m.bohr_radius == doctest::Approx(7.61).epsilon(0.005));
}

TEST_CASE("hydrogenic identity R a_B^2 = hbar^2/2m") {
    for (const char* name : {"he3", "he4"}) {
        const auto m = material_params(name);
        const double lhs = m.rydberg * m.bohr_radius * m.bohr_radius;
        CHECK(std::abs(lhs - units::hbar2_over_2m) / units::hbar2_over_2m <
              1e-6);
    }
}

TEST_CASE("doubling lambda quadruples R and halves a_B") {
    const auto base = material_params("he3");
    const auto twice = material_from_lambda("x", 2.0 * base.lambda, base.sigma,
                                            base.rho);
    CHECK(twice.rydberg == doctest::Approx(4.0 * base.rydberg).epsilon(1e-12));
    CHECK(twice.bohr_radius ==
          doctest::Approx(0.5 * base.bohr_radius).epsilon(1e-12));
}

TEST_CASE("unknown material is a configuration error") {
    CHECK_THROWS_AS(material_params("xx"), ConfigError);
    try {
        material_params("xx");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("he3") != std::string::npos);
        CHECK(std::string(e.what()).find("he4") != std::string::npos);
    }
}

TEST_CASE("unit-system consistency") {
    // m_e c^2 = 511 keV expressed through the stored combinations
    const double c_light = 299792.458; // nm/ps
    CHECK(units::electron_mass * c_light * c_light ==
          doctest::Approx(5.11e8).epsilon(1e-4));
    // cyclotron frequency at 1.5 T, in rad/s
    CHECK(units::cyclotron_rad_per_ps(1.5) * units::rad_per_ps_to_rad_per_s ==
          doctest::Approx(2.638e11).epsilon(1e-3));
    // magnetic length at 1 T
    CHECK(units::magnetic_length(1.0) == doctest::Approx(25.656).epsilon(1e-3));
}
