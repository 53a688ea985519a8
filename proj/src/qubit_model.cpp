#include "eoh/qubit_model.hpp"

#include <json.hpp>

namespace eoh {

QubitParams build_qubit(const Material& material, double f_bias,
                        const Grid& grid, std::string id) {
    if (f_bias < 0.0)
        throw UsageError("build_qubit requires a pressing bias F >= 0");
    const PotentialSpec spec{material, f_bias};
    const auto st = solve_bound_states(spec, grid, 2);
    QubitParams q;
    q.id = std::move(id);
    q.omega01 = (st[1].energy - st[0].energy) / units::hbar;
    q.z00 = matrix_element_z(st[0], st[0]);
    q.z01 = matrix_element_z(st[0], st[1]);
    q.z11 = matrix_element_z(st[1], st[1]);
    q.bias = f_bias;
    q.zz00 = matrix_element_z2(st[0], st[0]);
    q.zz11 = matrix_element_z2(st[1], st[1]);
    return q;
}

double coupling_strength(const QubitParams& a, const QubitParams& b, double d) {
    if (d <= 0.0) throw UsageError("coupling_strength requires d > 0");
    return units::e_sq_4pi_eps0 / (d * d * d) * a.z01 * b.z01;
}

double dipolar_shift(const QubitParams& q, double d) {
    if (d <= 0.0) throw UsageError("dipolar_shift requires d > 0");
    return units::e_sq_4pi_eps0 / (2.0 * d * d * d) * (q.zz11 - q.zz00) /
           units::hbar;
}

double first_order_coupling_estimate(const Material& material, double d) {
    if (d <= 0.0)
        throw UsageError("first_order_coupling_estimate requires d > 0");
    const double a = material.bohr_radius;
    return units::e_sq_4pi_eps0 * a * a / (d * d * d) / units::h_planck *
           units::ps_inv_to_GHz;
}

std::string to_json(const QubitParams& q) {
    nlohmann::json j{{"id", q.id},     {"omega01", q.omega01},
                     {"z00", q.z00},   {"z01", q.z01},
                     {"z11", q.z11},   {"bias", q.bias}};
    return j.dump();
}

QubitParams qubit_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    QubitParams q{};
    q.id = j.at("id").get<std::string>();
    q.omega01 = j.at("omega01").get<double>();
    q.z00 = j.at("z00").get<double>();
    q.z01 = j.at("z01").get<double>();
    q.z11 = j.at("z11").get<double>();
    q.bias = j.at("bias").get<double>();
    return q;
}

} // namespace eoh
